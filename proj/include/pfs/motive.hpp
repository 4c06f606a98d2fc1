#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/rational.hpp"

namespace pfs {

// A monomial [N1]*...*[Nk]*L^e; names form a sorted multiset.
struct Monomial {
  std::vector<std::string> names;
  std::uint32_t lexp = 0;

  // Named monomials first (by names, then L-exponent), pure powers of L last.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return std::make_tuple(a.names.empty(), a.names, a.lexp) < std::make_tuple(b.names.empty(), b.names, b.lexp);
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.names == b.names && a.lexp == b.lexp; }
};

// Element of the free commutative Q-algebra on named classes and L.
class MotiveClass {
 public:
  MotiveClass() = default;
  static MotiveClass constant(const Rational& c);
  static MotiveClass generator(const std::string& name);
  static MotiveClass lefschetz(std::uint32_t e = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Generator names occurring anywhere, sorted.
  std::vector<std::string> generators() const;

  MotiveClass operator+(const MotiveClass& o) const;
  MotiveClass operator-(const MotiveClass& o) const;
  MotiveClass operator*(const MotiveClass& o) const;
  MotiveClass scaled(const Rational& c) const;
  MotiveClass pow(std::uint32_t k) const;

  // e.g. "1 + 2*L + L^2", "1/2*[Y] + -1/2"; the zero class prints "0".
  std::string to_string() const;

  friend bool operator==(const MotiveClass& a, const MotiveClass& b) { return a.terms_ == b.terms_; }

 private:
  void add(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

// Inverse of MotiveClass::to_string (also accepts a leading "-" and spaces).
MotiveClass parse_motive(const std::string& text);

MotiveClass lefschetz_power(long i);
// 1 + L + ... + L^d
MotiveClass projective_space_class(long d);
// [X'] = x + z (L + ... + L^(r-1))
MotiveClass blowup_class(const MotiveClass& x, const MotiveClass& z, long r);

// Point counts per generator, per q, optionally per base point; a count
// without a base point applies to every base point.
class CountTable {
 public:
  void set(const std::string& name, std::uint32_t q, const Rational& count, std::vector<Elem> s_point = {});
  bool has(const std::string& name, std::uint32_t q, const std::vector<Elem>& s_point = {}) const;
  const Rational& get(const std::string& name, std::uint32_t q, const std::vector<Elem>& s_point = {}) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::tuple<std::string, std::uint32_t, std::vector<Elem>>, Rational> counts_;
};

// The ring homomorphism L -> q, [N] -> count(N, q). MissingCount when a
// generator has no count.
Rational specialize(const MotiveClass& m, std::uint32_t q, const CountTable& table,
                    const std::vector<Elem>& s_point = {});

}  // namespace pfs
