#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pfs {

// Arbitrary-size integers and rationals are GMP's; every rational stays in
// canonical form (mpq_class::canonicalize after construction from parts).
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "a", "-a", "a/b"; throws SyntaxError on anything else.
Rational parse_rational(std::string_view text);

}  // namespace pfs
