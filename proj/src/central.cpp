#include "pfs/central.hpp"

#include <map>

#include "pfs/errors.hpp"

namespace pfs {

QCentralFunction::QCentralFunction(FiniteGroup g, std::vector<Rational> values) : g_(std::move(g)), v_(std::move(values)) {
  if (v_.size() != g_.order()) fail(ErrorKind::NotCentral, "central function needs one value per group element");
  std::map<Subgroup, const Rational*> seen;
  for (GElem x = 0; x < g_.order(); ++x) {
    auto key = g_.canonical(g_.cyclic_subgroup(x));
    auto [it, fresh] = seen.emplace(key, &v_[x]);
    if (!fresh && *it->second != v_[x])
      fail(ErrorKind::NotCentral, "value at " + g_.label(x) + " differs from another generator of a conjugate of " +
                                      subgroup_to_string(g_, key));
  }
}

QCentralFunction QCentralFunction::constant(const FiniteGroup& g, const Rational& c) {
  return QCentralFunction(g, std::vector<Rational>(g.order(), c));
}

QCentralFunction QCentralFunction::operator+(const QCentralFunction& o) const {
  if (!(g_ == o.g_)) fail(ErrorKind::GroupMismatch, "central functions on different groups");
  auto v = v_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v_[i];
  return QCentralFunction(g_, std::move(v));
}

QCentralFunction QCentralFunction::operator-(const QCentralFunction& o) const { return *this + o.scaled(-1); }

QCentralFunction QCentralFunction::scaled(const Rational& c) const {
  auto v = v_;
  for (auto& x : v) x *= c;
  return QCentralFunction(g_, std::move(v));
}

QCentralFunction alpha_from_conj_domain(const ConjDomain& con) {
  const auto& g = con.group();
  std::vector<Rational> v(g.order());
  for (GElem x = 0; x < g.order(); ++x) v[x] = con.contains(g.cyclic_subgroup(x)) ? 1 : 0;
  return QCentralFunction(g, std::move(v));
}

QCentralFunction restrict_central(const GroupHom& psi, const QCentralFunction& alpha) {
  if (!(psi.target() == alpha.group())) fail(ErrorKind::GroupMismatch, "function does not live on the target group");
  std::vector<Rational> v(psi.source().order());
  for (GElem x = 0; x < v.size(); ++x) v[x] = alpha(psi(x));
  return QCentralFunction(psi.source(), std::move(v));
}

QCentralFunction induce_central(const GroupHom& psi, const QCentralFunction& alpha) {
  if (!psi.injective()) fail(ErrorKind::NotInjective, "induction needs an injective homomorphism");
  if (!(psi.source() == alpha.group())) fail(ErrorKind::GroupMismatch, "function does not live on the source group");
  const auto& G = psi.target();
  std::vector<std::optional<GElem>> back(G.order());
  for (GElem h = 0; h < psi.source().order(); ++h) back[psi(h)] = h;
  std::vector<Rational> v(G.order());
  for (GElem g = 0; g < G.order(); ++g) {
    Rational s = 0;
    for (GElem x = 0; x < G.order(); ++x) {
      auto y = G.mul(G.mul(G.inv(x), g), x);
      if (back[y]) s += alpha(*back[y]);
    }
    v[g] = s / static_cast<long>(psi.source().order());
  }
  return QCentralFunction(G, std::move(v));
}

QCentralFunction induced_trivial(const FiniteGroup& g, const Subgroup& h) {
  if (!g.is_subgroup(h)) fail(ErrorKind::NotASubgroup, subgroup_to_string(g, h) + " is not a subgroup");
  std::vector<Rational> v(g.order());
  for (GElem x = 0; x < g.order(); ++x) {
    long count = 0;
    for (GElem y = 0; y < g.order(); ++y)
      if (std::binary_search(h.begin(), h.end(), g.mul(g.mul(g.inv(y), x), y))) ++count;
    v[x] = make_rational(static_cast<long>(count), static_cast<long>(h.size()));
  }
  return QCentralFunction(g, std::move(v));
}

Rational inner_product(const QCentralFunction& a, const QCentralFunction& b) {
  if (!(a.group() == b.group())) fail(ErrorKind::GroupMismatch, "inner product of functions on different groups");
  const auto& g = a.group();
  Rational s = 0;
  for (GElem x = 0; x < g.order(); ++x) s += a(x) * b(g.inv(x));
  return s / static_cast<long>(g.order());
}

namespace {

// Solves M c = b exactly; SingularSystem when M is singular.
std::vector<Rational> solve(std::vector<std::vector<Rational>> m, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularSystem, "Artin system is singular");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= m[i][i];
  return b;
}

}  // namespace

std::vector<ArtinTerm> artin_decompose(const QCentralFunction& alpha) {
  const auto& g = alpha.group();
  auto classes = cyclic_subgroup_classes(g);
  const std::size_t n = classes.size();
  // Row K: evaluation at a generator of the class representative K.
  std::vector<GElem> at(n);
  for (std::size_t k = 0; k < n; ++k) at[k] = *g.cyclic_generator(classes[k].front());
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (std::size_t h = 0; h < n; ++h) {
    auto ind = induced_trivial(g, classes[h].front());
    for (std::size_t k = 0; k < n; ++k) m[k][h] = ind(at[k]);
  }
  std::vector<Rational> rhs(n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] = alpha(at[k]);
  auto c = solve(std::move(m), std::move(rhs));
  std::vector<ArtinTerm> out;
  for (std::size_t h = 0; h < n; ++h) out.push_back({classes[h].front(), c[h]});
  return out;
}

QCentralFunction artin_reconstruct(const FiniteGroup& g, const std::vector<ArtinTerm>& terms) {
  auto acc = QCentralFunction::constant(g, 0);
  for (const auto& t : terms) acc = acc + induced_trivial(g, t.rep).scaled(t.coeff);
  return acc;
}

std::vector<Rational> idempotent_coeffs(const QCentralFunction& alpha, const Rational& degree) {
  const auto& g = alpha.group();
  Rational norm = inner_product(alpha, alpha);
  if (norm == 0) fail(ErrorKind::ZeroNorm, "<alpha, alpha> = 0");
  Rational scale = degree / (norm * static_cast<long>(g.order()));
  std::vector<Rational> out(g.order());
  for (GElem x = 0; x < g.order(); ++x) out[x] = scale * alpha(g.inv(x));
  return out;
}

std::vector<Rational> convolve(const FiniteGroup& g, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(g.order());
  for (GElem x = 0; x < g.order(); ++x) {
    if (a[x] == 0) continue;
    for (GElem y = 0; y < g.order(); ++y)
      if (b[y] != 0) out[g.mul(x, y)] += a[x] * b[y];
  }
  return out;
}

}  // namespace pfs
