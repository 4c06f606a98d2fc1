#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/rational.hpp"

namespace pfs {

// Sparse multivariate polynomial with rational coefficients. Exponent
// vectors are aligned with variables(); zero coefficients are never stored.
// Binary operations merge variable lists (left operand's order first).
class Poly {
 public:
  using Exponents = std::vector<std::uint32_t>;

  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly variable(const std::string& name);

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(const std::string& var) const;
  // Variables with a nonzero exponent somewhere, in variables() order.
  std::vector<std::string> used_variables() const;

  // Same polynomial over a different variable list. Every used variable must
  // appear in `vars` (MissingVariable otherwise).
  Poly with_variables(const std::vector<std::string>& vars) const;
  Poly substitute(const std::map<std::string, Poly>& values) const;
  Poly rename(const std::map<std::string, std::string>& names) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly pow(std::uint32_t k) const;
  Poly scaled(const Rational& c) const;

  // Graded-lexicographic: higher total degree first, ties broken by the
  // exponent vector in descending lexicographic order.
  std::string to_string() const;

  // Equality ignores unused variables and variable order.
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void add_term(Exponents e, const Rational& c);
  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
};

// Grammar: integers, identifiers, + - * ^, parentheses; '/' only by a nonzero
// constant, so "1/2*x" and "x/3" are accepted.
Poly parse_poly(std::string_view text);

namespace detail {
// Parses a polynomial starting at `pos`, stopping at the first character that
// cannot continue it. Used by the formula parser.
Poly parse_poly_prefix(std::string_view text, std::size_t& pos);
bool is_identifier_start(char c);
bool is_identifier_char(char c);
void skip_space(std::string_view text, std::size_t& pos);
}  // namespace detail

Elem poly_eval(const Poly& f, const std::map<std::string, Elem>& assign, const FiniteField& k);

// A polynomial reduced into F_q with variables bound to slots of a flat
// assignment array; the hot path for brute-force enumeration.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  // slot_of maps every used variable to an index into the assignment array.
  CompiledPoly(const Poly& f, const std::map<std::string, std::size_t>& slot_of, const FiniteField& k);

  Elem eval(std::span<const Elem> slots, const FiniteField& k) const;
  bool is_zero() const { return terms_.empty(); }

 private:
  struct Term {
    Elem coef;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (slot, exponent)
  };
  std::vector<Term> terms_;
};

// Univariate specialization: substitute `assign` for all other variables and
// read off the coefficients in `var`.
FqPoly to_fq_poly(const Poly& f, const std::string& var, const std::map<std::string, Elem>& assign,
                  const FiniteField& k);

std::vector<std::uint32_t> distinct_degree_profile(const Poly& g, const FiniteField& k);

}  // namespace pfs
