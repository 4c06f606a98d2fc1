// Brute-force reference implementations used to derive expected values.
// Deliberately naive and independent of the library's algorithms: plain
// modular integers, explicit enumeration, no caching.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline u64 mod_pow(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Set of n-th powers of nonzero elements of F_p.
inline std::set<u64> nth_powers(u64 p, u64 n) {
  std::set<u64> s;
  for (u64 a = 1; a < p; ++a) s.insert(mod_pow(a, n, p));
  return s;
}

inline u64 count_nonsquares(u64 p) {
  auto sq = nth_powers(p, 2);
  u64 c = 0;
  for (u64 x = 1; x < p; ++x) c += !sq.count(x);
  return c;
}

// Order of w in F_p^* / (F_p^*)^m (smallest j >= 1 with w^j an m-th power).
inline u64 order_mod_powers(u64 w, u64 m, u64 p) {
  auto pw = nth_powers(p, m);
  for (u64 j = 1;; ++j)
    if (pw.count(mod_pow(w, j, p))) return j;
}

// Y: u^n = x over Gm, G = Z/n, A the subgroup of order d. Points of Y/A over
// F_p are w != 0 (with x = w^(n/d)); the cover Y -> Y/A is u^d = w with group
// A, and the point w has decomposition group A iff w has order d modulo d-th
// powers. Returns that count.
inline u64 kummer_relative_bucket(u64 p, u64 d) {
  u64 c = 0;
  for (u64 w = 1; w < p; ++w) c += order_mod_powers(w, d, p) == d;
  return c;
}

// |(Y/A)(F_p)| for Y: u^n = x over Gm with |A| = d: pairs (x, w), x != 0,
// w^(n/d) = x.
inline u64 kummer_quotient_points(u64 p, u64 n, u64 d) {
  u64 c = 0;
  for (u64 x = 1; x < p; ++x)
    for (u64 w = 0; w < p; ++w) c += mod_pow(w, n / d, p) == x;
  return c;
}

// Points x of Gm whose Frobenius in u^n = x generates the subgroup of order
// d, i.e. x has order d in F_p^*/(F_p^*)^n.
inline u64 kummer_absolute_bucket(u64 p, u64 n, u64 d) {
  u64 c = 0;
  for (u64 x = 1; x < p; ++x) c += order_mod_powers(x, n, p) == d;
  return c;
}

// Points of Bl_{[0:0:1]} P^2 = {([x:y:z],[u:v]) : x v = y u} over F_p.
inline u64 blowup_points(u64 p) {
  std::vector<std::vector<u64>> p2, p1;
  for (u64 a = 0; a < p; ++a)
    for (u64 b = 0; b < p; ++b) p2.push_back({a, b, 1});
  for (u64 a = 0; a < p; ++a) p2.push_back({a, 1, 0});
  p2.push_back({1, 0, 0});
  for (u64 a = 0; a < p; ++a) p1.push_back({a, 1});
  p1.push_back({1, 0});
  u64 c = 0;
  for (const auto& P : p2)
    for (const auto& Q : p1) c += (P[0] * Q[1] + p * p - P[1] * Q[0] % p) % p == 0;
  return c;
}

// Truncated product of two polynomials in t mod (t^len, p).
inline std::vector<u64> trunc_mul(const std::vector<u64>& a, const std::vector<u64>& b, u64 p) {
  std::vector<u64> c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return c;
}

// Enumerates all (n+1)-coefficient vectors over F_p.
template <class F>
void for_each_jet(u64 p, std::size_t len, F&& f) {
  std::vector<u64> v(len, 0);
  for (;;) {
    f(v);
    std::size_t i = 0;
    while (i < len && ++v[i] == p) v[i++] = 0;
    if (i == len) return;
  }
}

// n-jets on xy = 0 by direct substitution: pairs (x(t), y(t)) with
// x(t) y(t) = 0 mod t^(n+1).
inline u64 xy_jets(u64 p, std::size_t n) {
  u64 c = 0;
  for_each_jet(p, n + 1, [&](const std::vector<u64>& x) {
    for_each_jet(p, n + 1, [&](const std::vector<u64>& y) {
      auto z = trunc_mul(x, y, p);
      c += std::all_of(z.begin(), z.end(), [](u64 v) { return v == 0; });
    });
  });
  return c;
}

// Image of the m-jets of xy = 0 in the n-jets, as a set of level-major
// tuples (x_0, y_0, x_1, y_1, ...), matching the library's coordinate order.
inline std::set<std::vector<u64>> xy_image(u64 p, std::size_t m, std::size_t n) {
  std::set<std::vector<u64>> out;
  for_each_jet(p, m + 1, [&](const std::vector<u64>& x) {
    for_each_jet(p, m + 1, [&](const std::vector<u64>& y) {
      auto z = trunc_mul(x, y, p);
      if (!std::all_of(z.begin(), z.end(), [](u64 v) { return v == 0; })) return;
      std::vector<u64> t;
      for (std::size_t j = 0; j <= n; ++j) {
        t.push_back(x[j]);
        t.push_back(y[j]);
      }
      out.insert(std::move(t));
    });
  });
  return out;
}

// Jets of a polynomial system given as an evaluator on truncated series; the
// system is a list of functions mapping (series per variable) -> series.
template <class Sys>
u64 jets_generic(u64 p, std::size_t nvars, std::size_t n, Sys&& sys) {
  u64 c = 0;
  std::size_t total = nvars * (n + 1);
  for_each_jet(p, total, [&](const std::vector<u64>& flat) {
    std::vector<std::vector<u64>> xs(nvars);
    for (std::size_t i = 0; i < nvars; ++i) xs[i].assign(flat.begin() + i * (n + 1), flat.begin() + (i + 1) * (n + 1));
    c += sys(xs);
  });
  return c;
}

// Group-theory oracles on raw Cayley tables.
using Table = std::vector<std::vector<std::uint32_t>>;

inline std::uint32_t inverse(const Table& t, std::uint32_t a) {
  for (std::uint32_t b = 0; b < t.size(); ++b)
    if (t[a][b] == 0) return b;
  return 0;
}

// (Ind_H^G f)(g) = 1/|H| sum over y in G with y g y^-1 in image(H) of
// f(hom^-1(y g y^-1)); hom maps H -> G injectively.
template <class Q>
std::vector<Q> induce(const Table& g, const Table& h, const std::vector<std::uint32_t>& hom, const std::vector<Q>& f) {
  std::map<std::uint32_t, std::uint32_t> pre;
  for (std::uint32_t a = 0; a < h.size(); ++a) pre[hom[a]] = a;
  std::vector<Q> out(g.size(), Q(0));
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      auto c = g[g[y][x]][inverse(g, y)];
      auto it = pre.find(c);
      if (it != pre.end()) out[x] += f[it->second];
    }
  for (auto& v : out) v /= Q(static_cast<long>(h.size()));
  return out;
}

template <class Q>
Q inner(const Table& g, const std::vector<Q>& a, const std::vector<Q>& b) {
  Q s(0);
  for (std::uint32_t x = 0; x < g.size(); ++x) s += a[x] * b[inverse(g, x)];
  return s / Q(static_cast<long>(g.size()));
}

template <class Q>
std::vector<Q> convolve(const Table& g, const std::vector<Q>& a, const std::vector<Q>& b) {
  std::vector<Q> c(g.size(), Q(0));
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) c[g[x][y]] += a[x] * b[y];
  return c;
}

// Exhaustive list of injective homomorphisms between Cayley tables.
inline std::vector<std::vector<std::uint32_t>> injective_homs(const Table& h, const Table& g) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> m(h.size(), 0);
  for (;;) {
    bool ok = m[0] == 0;
    std::set<std::uint32_t> img(m.begin(), m.end());
    ok = ok && img.size() == m.size();
    for (std::uint32_t a = 0; ok && a < h.size(); ++a)
      for (std::uint32_t b = 0; ok && b < h.size(); ++b) ok = m[h[a][b]] == g[m[a]][m[b]];
    if (ok) out.push_back(m);
    std::size_t i = 0;
    while (i < m.size() && ++m[i] == g.size()) m[i++] = 0;
    if (i == m.size()) return out;
  }
}

}  // namespace oracle
