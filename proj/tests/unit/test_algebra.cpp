#include <random>
#include <set>

#include "../oracles.hpp"
#include "doctest.h"
#include "pfs/errors.hpp"
#include "pfs/field.hpp"
#include "pfs/poly.hpp"

using namespace pfs;

namespace {

// Multiplication in F_p[t]/(m) straight from the encoding, as an oracle.
Elem slow_mul(const FiniteField& k, Elem a, Elem b) {
  const std::uint32_t p = k.p(), e = k.degree();
  std::vector<std::uint64_t> x(e), y(e), z(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (std::uint32_t i = 0; i < e; ++i)
    for (std::uint32_t j = 0; j < e; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
  const auto& m = k.modulus();
  for (std::uint32_t d = 2 * e - 1; d >= e; --d) {
    const auto c = z[d];
    z[d] = 0;
    for (std::uint32_t i = 0; i < e; ++i) z[d - e + i] = (z[d - e + i] + (p - m[i]) * c) % p;
  }
  Elem out = 0;
  for (std::uint32_t i = e; i-- > 0;) out = out * p + static_cast<Elem>(z[i]);
  return out;
}

}  // namespace

TEST_CASE("rationals are canonical and parse/print round-trip") {
  CHECK(make_rational(4, 6) == make_rational(2, 3));
  CHECK(to_string(make_rational(4, -6)) == "-2/3");
  CHECK(to_string(make_rational(6, 3)) == "2");
  CHECK(parse_rational("-7/14") == make_rational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("make_field examples") {
  CHECK(make_field(5).gen() == 2);
  CHECK(make_field(2).gen() == 1);
  auto f9 = make_field(3, 2);
  CHECK(f9.q() == 9);
  // x^2 + 1 is the least irreducible monic quadratic over F_3 (x^2, x^2+x, ... have roots).
  CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(make_field_q(8).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
  try {
    make_field(6);
    FAIL("expected NonPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonPrime);
  }
  try {
    make_field(2, 17);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  CHECK_THROWS_AS(make_field_q(12), Error);
}

TEST_CASE("field multiplication agrees with polynomial arithmetic mod the modulus") {
  for (std::uint32_t q : {4u, 8u, 9u, 25u, 27u, 49u}) {
    auto k = make_field_q(q);
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) REQUIRE(k.mul(a, b) == slow_mul(k, a, b));
    for (Elem a = 1; a < q; ++a) CHECK(k.mul(a, k.inv(a)) == 1);
    // gen has full order
    std::set<Elem> powers;
    for (std::uint32_t i = 0; i + 1 < q; ++i) powers.insert(k.pow(k.gen(), i));
    CHECK(powers.size() == q - 1);
  }
}

TEST_CASE("prime-field arithmetic matches modular integers") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 31u}) {
    auto k = make_field(p);
    for (Elem a = 0; a < p; ++a)
      for (Elem b = 0; b < p; ++b) {
        CHECK(k.add(a, b) == (a + b) % p);
        CHECK(k.mul(a, b) == (a * b) % p);
        CHECK(k.sub(a, b) == (a + p - b) % p);
      }
  }
  auto k5 = make_field(5);
  CHECK(k5.from_rational(make_rational(1, 2)) == 3);
  CHECK(k5.from_int(-1) == 4);
  try {
    k5.from_rational(make_rational(1, 5));
    FAIL("expected DenominatorNotInvertible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DenominatorNotInvertible);
  }
  try {
    k5.inv(0);
    FAIL("expected ZeroInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroInput);
  }
}

TEST_CASE("Frobenius is an automorphism fixing exactly the prime field") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 49u, 81u}) {
    auto k = make_field_q(q);
    std::set<Elem> image;
    std::uint32_t fixed = 0;
    for (Elem a = 0; a < q; ++a) {
      image.insert(k.frobenius(a));
      fixed += k.frobenius(a) == a;
      for (Elem b = 0; b < q; b += 3) {
        CHECK(k.frobenius(k.add(a, b)) == k.add(k.frobenius(a), k.frobenius(b)));
        CHECK(k.frobenius(k.mul(a, b)) == k.mul(k.frobenius(a), k.frobenius(b)));
      }
    }
    CHECK(image.size() == q);
    CHECK(fixed == k.p());
  }
}

TEST_CASE("poly_eval examples") {
  auto k = make_field(5);
  CHECK(poly_eval(parse_poly("x*y - 1"), {{"x", 2}, {"y", 3}}, k) == 0);
  CHECK(poly_eval(parse_poly("x^2 + 1"), {{"x", 2}}, k) == 0);
  CHECK(poly_eval(parse_poly("1/2*x"), {{"x", 3}}, k) == 4);
  try {
    poly_eval(parse_poly("x + y"), {{"x", 1}}, k);
    FAIL("expected MissingVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingVariable);
  }
}

TEST_CASE("power_residue examples and multiplicativity") {
  auto k7 = make_field(7);
  CHECK(power_residue(4, 2, k7) == 0);
  CHECK(power_residue(3, 2, k7) == 1);
  CHECK(power_residue(1, 3, k7) == 0);
  for (std::uint32_t q : {7u, 13u, 25u}) {
    auto k = make_field_q(q);
    for (std::uint32_t n = 1; n < q; ++n) {
      if ((q - 1) % n) continue;
      for (Elem c = 1; c < q; ++c)
        for (Elem d = 1; d < q; ++d)
          REQUIRE(power_residue(k.mul(c, d), n, k) == (power_residue(c, n, k) + power_residue(d, n, k)) % n);
    }
  }
  // For prime fields, residue 0 is exactly the n-th powers.
  auto k13 = make_field(13);
  auto cubes = oracle::nth_powers(13, 3);
  for (Elem c = 1; c < 13; ++c) CHECK((power_residue(c, 3, k13) == 0) == (cubes.count(c) > 0));
}

TEST_CASE("distinct_degree_profile examples") {
  auto k5 = make_field(5);
  auto k3 = make_field(3);
  CHECK(distinct_degree_profile(parse_poly("x^2 - 1"), k5) == std::vector<std::uint32_t>{1, 1});
  CHECK(distinct_degree_profile(parse_poly("x^2 - 2"), k5) == std::vector<std::uint32_t>{2});
  CHECK(distinct_degree_profile(parse_poly("x^3 - x"), k3) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(distinct_degree_profile(parse_poly("x^4 - 2"), k5) == std::vector<std::uint32_t>{4});
  try {
    distinct_degree_profile(parse_poly("x^2"), k5);
    FAIL("expected NotSquarefree");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSquarefree);
  }
}

TEST_CASE("distinct-degree profile matches root counting and sums to the degree") {
  std::mt19937 rng(7);
  for (std::uint32_t q : {5u, 7u, 9u}) {
    auto k = make_field_q(q);
    std::uniform_int_distribution<Elem> c(0, q - 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Elem> co(5);
      for (auto& v : co) v = c(rng);
      co.push_back(1);
      FqPoly g(k, co);
      if (gcd(g, g.derivative()).degree() != 0) continue;
      auto prof = distinct_degree_profile(g);
      std::uint32_t sum = 0, ones = 0, roots = 0;
      for (auto d : prof) sum += d, ones += d == 1;
      for (Elem a = 0; a < q; ++a) roots += g.eval(a) == 0;
      CHECK(sum == 5);
      CHECK(ones == roots);
    }
  }
}

TEST_CASE("polynomial parsing and graded-lex printing") {
  CHECK(parse_poly("y + x^2 + 2*x*y").to_string() == "x^2 + 2*x*y + y");
  CHECK(parse_poly("(x+1)^2").to_string() == "x^2 + 2*x + 1");
  CHECK(parse_poly("x/3 - 1/2").to_string() == "1/3*x - 1/2");
  CHECK(parse_poly("0").to_string() == "0");
  CHECK(parse_poly("x - x").is_zero());
  CHECK(parse_poly("x*y") == parse_poly("y*x"));
  try {
    parse_poly("x +* y");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.position.has_value());
  }
  CHECK_THROWS_AS(parse_poly("x/0"), Error);
  CHECK_THROWS_AS(parse_poly("1/x"), Error);
}

TEST_CASE("polynomial ring axioms on random triples") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4), ex(0, 2);
  const char* vars[] = {"x", "y", "z"};
  auto random_poly = [&] {
    Poly p;
    for (int t = 0; t < 4; ++t) {
      Poly m = Poly::constant(make_rational(coef(rng), 1 + ex(rng)));
      for (auto v : vars) m = m * Poly::variable(v).pow(static_cast<std::uint32_t>(ex(rng)));
      p = p + m;
    }
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_poly(), b = random_poly(), c = random_poly();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
    CHECK(parse_poly(a.to_string()) == a);
  }
}
