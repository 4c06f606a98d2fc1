#include "pfs/field.hpp"

#include <algorithm>

#include "pfs/errors.hpp"

namespace pfs {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Coeffs = std::vector<std::uint32_t>;  // over F_p, low to high

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime; Fermat.
  std::uint64_t r = 1, b = a % p;
  for (std::uint64_t k = p - 2; k; k >>= 1, b = b * b % p)
    if (k & 1) r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo b over F_p (b nonzero).
Coeffs rem_mod_p(Coeffs a, const Coeffs& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t inv_lead = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::uint64_t f = std::uint64_t(a.back()) * inv_lead % p;
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - f * b[i] % p) % p);
    trim(a);
  }
  return a;
}

Coeffs decode(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
  Coeffs c(len);
  for (std::uint32_t i = 0; i < len; ++i, code /= p) c[i] = code % p;
  return c;
}

std::uint32_t encode(const Coeffs& c, std::uint32_t p) {
  std::uint32_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
  return v;
}

bool irreducible_by_trial_division(const Coeffs& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    std::uint32_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint32_t code = 0; code < count; ++code) {
      Coeffs g = decode(code, p, d);
      g.push_back(1);
      if (rem_mod_p(f, g, p).empty()) return false;
    }
  }
  return true;
}

Coeffs mul_mod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p) {
  Coeffs r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  return rem_mod_p(std::move(r), m, p);
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

FiniteField make_field(std::uint32_t p, std::uint32_t e, std::uint32_t cap) {
  if (!is_prime(p)) fail(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
  if (e == 0) fail(ErrorKind::InvalidArgument, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    if (q > cap) fail(ErrorKind::CapExceeded, "field order exceeds cap " + std::to_string(cap));
  }

  auto impl = std::make_shared<FiniteField::Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = static_cast<std::uint32_t>(q);

  if (e == 1) {
    impl->modulus = {0, 1};
  } else {
    for (std::uint32_t code = 0;; ++code) {
      Coeffs f = decode(code, p, e);
      f.push_back(1);
      if (irreducible_by_trial_division(f, p)) {
        impl->modulus = f;
        break;
      }
    }
  }

  const std::uint32_t order = impl->q - 1;
  auto slow_mul = [&](Elem a, Elem b) -> Elem {
    if (e == 1) return static_cast<Elem>(std::uint64_t(a) * b % p);
    return encode(mul_mod(decode(a, p, e), decode(b, p, e), impl->modulus, p), p);
  };
  auto slow_pow = [&](Elem a, std::uint64_t k) {
    Elem r = 1;
    for (; k; k >>= 1, a = slow_mul(a, a))
      if (k & 1) r = slow_mul(r, a);
    return r;
  };
  const auto factors = prime_factors(order);
  for (Elem g = 1; g < impl->q; ++g) {
    bool primitive = true;
    for (auto r : factors)
      if (slow_pow(g, order / r) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      impl->gen = g;
      break;
    }
  }

  impl->exp.resize(order);
  impl->log.assign(impl->q, 0);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < order; ++i) {
    impl->exp[i] = cur;
    impl->log[cur] = i;
    cur = slow_mul(cur, impl->gen);
  }
  return FiniteField(std::move(impl));
}

FiniteField make_field_q(std::uint32_t q, std::uint32_t cap) {
  if (q < 2) fail(ErrorKind::NonPrime, "field order must be a prime power >= 2");
  std::uint32_t p = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  std::uint32_t e = 0, rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) fail(ErrorKind::NonPrime, std::to_string(q) + " is not a prime power");
  return make_field(p, e, cap);
}

Elem FiniteField::add(Elem a, Elem b) const {
  const auto p = impl_->p;
  if (impl_->e == 1) {
    Elem s = a + b;
    return s >= p ? s - p : s;
  }
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < impl_->e; ++i, a /= p, b /= p, scale *= p)
    r += ((a % p + b % p) % p) * scale;
  return r;
}

Elem FiniteField::neg(Elem a) const {
  const auto p = impl_->p;
  if (impl_->e == 1) return a == 0 ? 0 : p - a;
  Elem r = 0, scale = 1;
  for (std::uint32_t i = 0; i < impl_->e; ++i, a /= p, scale *= p) r += ((p - a % p) % p) * scale;
  return r;
}

Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (impl_->e == 1) return static_cast<Elem>(std::uint64_t(a) * b % impl_->p);
  const std::uint32_t order = impl_->q - 1;
  std::uint32_t s = impl_->log[a] + impl_->log[b];
  if (s >= order) s -= order;
  return impl_->exp[s];
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::ZeroInput, "inverse of zero");
  const std::uint32_t order = impl_->q - 1;
  return impl_->exp[(order - impl_->log[a]) % order];
}

Elem FiniteField::pow(Elem a, std::uint64_t k) const {
  Elem r = 1;
  for (; k; k >>= 1, a = mul(a, a))
    if (k & 1) r = mul(r, a);
  return r;
}

Elem FiniteField::from_int(long long v) const {
  long long p = impl_->p;
  long long r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

Elem FiniteField::from_rational(const Rational& r) const {
  const Integer p = impl_->p;
  Integer num = r.get_num() % p;
  Integer den = r.get_den() % p;
  if (num < 0) num += p;
  if (den == 0)
    fail(ErrorKind::DenominatorNotInvertible,
         "denominator of " + to_string(r) + " vanishes mod " + std::to_string(impl_->p));
  Elem n = static_cast<Elem>(num.get_ui());
  Elem d = static_cast<Elem>(den.get_ui());
  return mul(n, inv(d));
}

std::string FiniteField::name() const { return "F_" + std::to_string(impl_->q); }

std::uint32_t power_residue(Elem c, std::uint32_t n, const FiniteField& k) {
  if (c == 0) fail(ErrorKind::ZeroInput, "power residue of zero");
  if (n == 0 || (k.q() - 1) % n != 0)
    fail(ErrorKind::IncompatibleModulus,
         std::to_string(n) + " does not divide " + std::to_string(k.q() - 1));
  const std::uint64_t m = (k.q() - 1) / n;
  const Elem target = k.pow(c, m);
  const Elem zeta = k.pow(k.gen(), m);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < n; ++i, cur = k.mul(cur, zeta))
    if (cur == target) return i;
  fail(ErrorKind::InvalidArgument, "power residue not found");  // unreachable for a valid field
}

// ---------------------------------------------------------------------------
// FqPoly

FqPoly::FqPoly(const FiniteField& k, std::vector<Elem> coeffs) : k_(k), c_(std::move(coeffs)) { trim(); }

void FqPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FqPoly FqPoly::x(const FiniteField& k) { return FqPoly(k, {0, 1}); }
FqPoly FqPoly::constant(const FiniteField& k, Elem c) { return FqPoly(k, {c}); }

Elem FqPoly::eval(Elem x) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = k_.add(k_.mul(r, x), c_[i]);
  return r;
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = k_.add(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
  return FqPoly(k_, std::move(r));
}

FqPoly FqPoly::operator-(const FqPoly& o) const {
  std::vector<Elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = k_.sub(i < c_.size() ? c_[i] : 0, i < o.c_.size() ? o.c_[i] : 0);
  return FqPoly(k_, std::move(r));
}

FqPoly FqPoly::operator*(const FqPoly& o) const {
  if (is_zero() || o.is_zero()) return FqPoly(k_, {});
  std::vector<Elem> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = k_.add(r[i + j], k_.mul(c_[i], o.c_[j]));
  return FqPoly(k_, std::move(r));
}

FqPoly FqPoly::derivative() const {
  std::vector<Elem> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(k_.mul(k_.from_int(static_cast<long long>(i)), c_[i]));
  return FqPoly(k_, std::move(r));
}

FqPoly FqPoly::monic() const {
  if (is_zero()) return *this;
  const Elem li = k_.inv(lead());
  std::vector<Elem> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = k_.mul(c_[i], li);
  return FqPoly(k_, std::move(r));
}

std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) fail(ErrorKind::ZeroInput, "polynomial division by zero");
  const FiniteField& k = a.field();
  std::vector<Elem> rem = a.coeffs();
  const auto& bc = b.coeffs();
  if (rem.size() < bc.size()) return {FqPoly(k, {}), a};
  std::vector<Elem> quo(rem.size() - bc.size() + 1, 0);
  const Elem li = k.inv(b.lead());
  for (std::size_t s = quo.size(); s-- > 0;) {
    const Elem f = k.mul(rem[s + bc.size() - 1], li);
    quo[s] = f;
    if (f == 0) continue;
    for (std::size_t i = 0; i < bc.size(); ++i) rem[s + i] = k.sub(rem[s + i], k.mul(f, bc[i]));
  }
  return {FqPoly(k, std::move(quo)), FqPoly(k, std::move(rem))};
}

FqPoly gcd(FqPoly a, FqPoly b) {
  while (!b.is_zero()) {
    FqPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

FqPoly powmod(const FqPoly& base, std::uint64_t e, const FqPoly& mod) {
  const FiniteField& k = base.field();
  FqPoly result = divmod(FqPoly::constant(k, 1), mod).second;
  FqPoly b = divmod(base, mod).second;
  for (; e; e >>= 1) {
    if (e & 1) result = divmod(result * b, mod).second;
    b = divmod(b * b, mod).second;
  }
  return result;
}

std::vector<std::uint32_t> distinct_degree_profile(const FqPoly& g_in) {
  if (g_in.degree() < 1) fail(ErrorKind::InvalidArgument, "distinct-degree profile needs degree >= 1");
  const FiniteField& k = g_in.field();
  if (gcd(g_in, g_in.derivative()).degree() != 0)
    fail(ErrorKind::NotSquarefree, "polynomial is not squarefree");

  std::vector<std::uint32_t> profile;
  FqPoly g = g_in.monic();
  const FqPoly x = FqPoly::x(k);
  FqPoly h = x;  // x^(q^i) mod g
  for (std::uint32_t i = 1; g.degree() >= 2 * static_cast<int>(i); ++i) {
    h = powmod(h, k.q(), g);
    FqPoly d = gcd(h - x, g);
    if (d.degree() > 0) {
      for (int j = 0; j < d.degree() / static_cast<int>(i); ++j) profile.push_back(i);
      g = divmod(g, d).first;
      h = divmod(h, g).second;
    }
  }
  if (g.degree() > 0) profile.push_back(static_cast<std::uint32_t>(g.degree()));
  std::sort(profile.begin(), profile.end());
  return profile;
}

}  // namespace pfs
