#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pfs/rational.hpp"

namespace pfs {

// Field elements are encoded as integers 0..q-1: the element
// c_0 + c_1 t + ... + c_{e-1} t^{e-1} of F_p[t]/(modulus) is stored as
// c_0 + c_1 p + ... + c_{e-1} p^{e-1}. The prime subfield is therefore 0..p-1.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kDefaultFieldCap = 1u << 16;

bool is_prime(std::uint64_t n);

class FiniteField {
 public:
  std::uint32_t p() const { return impl_->p; }
  std::uint32_t degree() const { return impl_->e; }
  std::uint32_t q() const { return impl_->q; }
  // Monic modulus, coefficients low to high (length e+1).
  const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
  Elem gen() const { return impl_->gen; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws ZeroInput on 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  Elem from_int(long long v) const;
  // a/b -> a * b^{-1} in the prime subfield; DenominatorNotInvertible when p | b.
  Elem from_rational(const Rational& r) const;

  Elem frobenius(Elem a) const { return pow(a, impl_->p); }

  std::string name() const;

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.impl_ == b.impl_ || (a.q() == b.q() && a.modulus() == b.modulus());
  }

 private:
  struct Impl {
    std::uint32_t p = 0, e = 0, q = 0;
    std::vector<std::uint32_t> modulus;
    Elem gen = 0;
    std::vector<Elem> exp;            // exp[i] = gen^i, i < q-1
    std::vector<std::uint32_t> log;   // log[gen^i] = i; log[0] unused
  };
  explicit FiniteField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend FiniteField make_field(std::uint32_t p, std::uint32_t e, std::uint32_t cap);
};

// Deterministic construction: modulus is the smallest irreducible monic
// polynomial of degree e, ordered by its encoding sum c_i p^i (c_e excluded);
// gen is the smallest element of multiplicative order q-1.
FiniteField make_field(std::uint32_t p, std::uint32_t e = 1, std::uint32_t cap = kDefaultFieldCap);
// q must be a prime power.
FiniteField make_field_q(std::uint32_t q, std::uint32_t cap = kDefaultFieldCap);

// The unique i in Z/n with c^((q-1)/n) = gen^(i (q-1)/n).
std::uint32_t power_residue(Elem c, std::uint32_t n, const FiniteField& k);

// Dense univariate polynomial over F_q, coefficients low to high, no trailing
// zeros (the zero polynomial is empty).
class FqPoly {
 public:
  FqPoly(const FiniteField& k, std::vector<Elem> coeffs);

  static FqPoly x(const FiniteField& k);
  static FqPoly constant(const FiniteField& k, Elem c);

  const FiniteField& field() const { return k_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem eval(Elem x) const;

  FqPoly operator+(const FqPoly& o) const;
  FqPoly operator-(const FqPoly& o) const;
  FqPoly operator*(const FqPoly& o) const;
  FqPoly derivative() const;
  FqPoly monic() const;

  friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  FiniteField k_;
  std::vector<Elem> c_;
};

// Quotient and remainder; divisor must be nonzero.
std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b);
FqPoly gcd(FqPoly a, FqPoly b);
FqPoly powmod(const FqPoly& base, std::uint64_t e, const FqPoly& mod);

// Multiset of degrees of the irreducible factors of a squarefree g, sorted
// ascending, by distinct-degree stripping with gcd(x^(q^i) - x, g).
std::vector<std::uint32_t> distinct_degree_profile(const FqPoly& g);

}  // namespace pfs
