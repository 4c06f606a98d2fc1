#include "../oracles.hpp"
#include "doctest.h"
#include "pfs/elimination.hpp"
#include "pfs/errors.hpp"
#include "pfs/fixture.hpp"
#include "pfs/stratification.hpp"

using namespace pfs;

namespace {

const std::string kFixtures = PFS_FIXTURE_DIR;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

using Tuples = std::vector<std::vector<Elem>>;

Formula on(const std::string& text, const std::string& var = "x") {
  return parse_formula(text, {}, std::vector<std::string>{var});
}

const FiniteGroup kZ2 = FiniteGroup::cyclic(2);

CoverSpec square_cover(const std::string& v = "x") { return CoverSpec::kummer(2, parse_poly(v), on(v + " != 0", v)); }
CoverSpec origin(const std::string& v = "x") { return CoverSpec::trivial(on(v + " = 0", v)); }

// Gm with u^2 = x and Con on Z/2, plus the origin with an empty domain.
GaloisStratification square_strat(std::set<Subgroup> con, const std::string& v = "x") {
  return GaloisStratification({}, {v},
                              {{square_cover(v), ConjDomain(kZ2, std::move(con))},
                               {origin(v), ConjDomain::empty(FiniteGroup::trivial())}});
}

Tuples points(const GaloisStratification& s, std::uint32_t q) { return galois_set(s, {}, make_field_q(q)).tuples; }

Tuples nonzero_where(std::uint32_t p, bool squares) {
  auto sq = oracle::nth_powers(p, 2);
  Tuples out;
  for (Elem x = 1; x < p; ++x)
    if ((sq.count(x) > 0) == squares) out.push_back({x});
  return out;
}

}  // namespace

TEST_CASE("decomposition_class examples") {
  auto k5 = make_field(5);
  std::vector<Elem> a4{4}, a2{2}, a0{0};
  CHECK(decomposition_class(square_cover(), {}, a4, k5) == Subgroup{0});
  CHECK(decomposition_class(square_cover(), {}, a2, k5) == Subgroup{0, 1});
  CHECK(decomposition_class(origin(), {}, a0, k5) == Subgroup{0});
  CHECK(kind_of([&] { decomposition_class(square_cover(), {}, a0, k5); }) == ErrorKind::PointOffStratum);
  // Z/4 Kummer at q = 7 is not admissible (4 does not divide 6).
  auto z4 = CoverSpec::kummer(4, parse_poly("x"), on("x != 0"));
  CHECK(kind_of([&] { decomposition_class(z4, {}, a2, make_field(7)); }) == ErrorKind::InadmissiblePrime);
}

TEST_CASE("Kummer decomposition classes follow the power-residue oracle") {
  auto z4 = CoverSpec::kummer(4, parse_poly("x"), on("x != 0"));
  for (std::uint32_t p : {5u, 13u, 17u, 29u}) {
    auto k = make_field(p);
    for (Elem x = 1; x < p; ++x) {
      std::vector<Elem> a{x};
      CHECK(decomposition_class(z4, {}, a, k).size() == oracle::order_mod_powers(x, 4, p));
    }
  }
}

TEST_CASE("galois_set examples") {
  CHECK(points(square_strat({{0}}), 5) == Tuples{{1}, {4}});
  CHECK(points(square_strat({{0, 1}}), 5) == Tuples{{2}, {3}});
  CHECK(points(square_strat({}), 5).empty());
  for (std::uint32_t p : {3u, 7u, 11u, 13u}) {
    CHECK(points(square_strat({{0}}), p) == nonzero_where(p, true));
    CHECK(points(square_strat({{0, 1}}), p) == nonzero_where(p, false));
  }
  // Overlapping strata.
  GaloisStratification bad({}, {"x"},
                           {{square_cover(), ConjDomain::all(kZ2)},
                            {CoverSpec::trivial(on("x = 0 | x = 1")), ConjDomain::empty(FiniteGroup::trivial())}});
  CHECK(kind_of([&] { points(bad, 5); }) == ErrorKind::PartitionViolation);
}

TEST_CASE("fiber_decomposition_order examples") {
  auto k5 = make_field(5);
  CHECK(fiber_decomposition_order(parse_poly("u^2 - 4"), k5) == 1);
  CHECK(fiber_decomposition_order(parse_poly("u^2 - 2"), k5) == 2);
  CHECK(fiber_decomposition_order(parse_poly("u^4 - 2"), k5) == 4);
  CHECK(kind_of([&] { fiber_decomposition_order(parse_poly("(u - 1)*(u^2 - 2)"), k5); }) == ErrorKind::UnequalDegrees);
}

TEST_CASE("quotient counts agree with the equation count and the oracle") {
  auto z4 = CoverSpec::kummer(4, parse_poly("x"), on("x != 0"));
  for (std::uint32_t p : {5u, 13u, 17u}) {
    auto k = make_field(p);
    for (std::uint32_t d : {1u, 2u, 4u}) {
      Subgroup h;
      for (GElem x = 0; x < 4; x += 4 / d) h.push_back(x);
      auto expect = Integer(static_cast<unsigned long>(oracle::kummer_quotient_points(p, 4, d)));
      CHECK(kummer_quotient_count(z4, d, {}, k) == expect);
      CHECK(quotient_count(z4, h, {}, k) == expect);
    }
  }
}

TEST_CASE("inflate examples") {
  auto z4c = CoverSpec::kummer(4, parse_poly("x"), on("x != 0"));
  GroupHom red(z4c.group(), kZ2, {0, 1, 0, 1});
  CHECK(inflate({square_cover(), ConjDomain(kZ2, {{0, 1}})}, red, z4c).con.subs() == std::set<Subgroup>{{0, 1, 2, 3}});
  CHECK(inflate({square_cover(), ConjDomain(kZ2, {{0}})}, red, z4c).con.subs() == std::set<Subgroup>{{0}, {0, 2}});
  Stratum s{square_cover(), ConjDomain(kZ2, {{0}})};
  CHECK(inflate(s, GroupHom::identity(kZ2), square_cover()).con == s.con);
  // Inflation does not change the set: at q = 13 both see the squares.
  GaloisStratification lifted({}, {"x"}, {inflate(s, red, z4c), {origin(), ConjDomain::empty(FiniteGroup::trivial())}});
  CHECK(points(lifted, 13) == points(square_strat({{0}}), 13));
  CHECK(kind_of([&] { inflate(s, GroupHom(kZ2, z4c.group(), {0, 2}), z4c); }) == ErrorKind::NotSurjective);
}

TEST_CASE("refine examples") {
  auto base = square_strat({{0}});
  RefinementDatum split{0, {{on("x = 1"), {0, 1}, std::nullopt, std::nullopt},
                            {on("x != 1"), {0, 1}, std::nullopt, std::nullopt}}};
  auto r = refine(base, {split});
  REQUIRE(r.strata().size() == 3);
  CHECK(r.strata()[0].con.subs() == std::set<Subgroup>{{0}});
  CHECK(r.strata()[1].con.subs() == std::set<Subgroup>{{0}});
  for (std::uint32_t p : {5u, 7u, 13u}) CHECK(points(r, p) == points(base, p));

  // x = 1 is a square, so its decomposition group is trivial.
  auto nonsq = square_strat({{0, 1}});
  RefinementDatum pin{0, {{on("x = 1"), {0}, std::nullopt, std::nullopt},
                          {on("x != 1"), {0, 1}, std::nullopt, std::nullopt}}};
  auto r2 = refine(nonsq, {pin});
  CHECK(r2.strata()[0].con.empty_domain());
  for (std::uint32_t p : {5u, 7u, 13u}) CHECK(points(r2, p) == points(nonsq, p));
  CHECK(kind_of([&] { refine(base, {RefinementDatum{0, {{on("x = 1"), {0, 1, 2}, std::nullopt, std::nullopt}}}}); }) ==
        ErrorKind::NotASubgroup);
}

TEST_CASE("pullback examples") {
  auto sq = square_strat({{0}});
  auto id = pullback(sq, {{"x", parse_poly("y")}}, {"y"});
  for (std::uint32_t p : {5u, 7u}) CHECK(points(id, p) == points(sq, p));
  // x -> y^2: every nonzero y maps to a nonzero square.
  auto pb = pullback(sq, {{"x", parse_poly("y^2")}}, {"y"});
  for (std::uint32_t p : {5u, 7u, 13u}) {
    Tuples expect;
    for (Elem y = 1; y < p; ++y) expect.push_back({y});
    CHECK(points(pb, p) == expect);
  }
  // The pulled-back nonsquare set is empty; with the declared decomposition
  // group {e} the domain is empty too.
  auto pn = pullback(square_strat({{0, 1}}), {{"x", parse_poly("y^2")}}, {"y"}, {{0, {0}}});
  CHECK(pn.strata()[0].con.empty_domain());
  for (std::uint32_t p : {5u, 7u, 13u}) CHECK(points(pn, p).empty());
  auto constant = pullback(square_strat({}), {{"x", parse_poly("2")}}, {"y"});
  CHECK(points(constant, 5).empty());
}

TEST_CASE("boolean operations and complement") {
  auto a = square_strat({{0}}), b = square_strat({{0, 1}});
  auto u = boolean_combine(a, b, BoolMode::Or);
  CHECK(u.strata()[0].con == ConjDomain::all(kZ2));
  CHECK(points(u, 5) == Tuples{{1}, {2}, {3}, {4}});
  auto i = boolean_combine(a, b, BoolMode::And);
  CHECK(i.strata()[0].con.empty_domain());
  CHECK(complement(a).strata()[0].con.subs() == std::set<Subgroup>{{0, 1}});
  CHECK(points(complement(a), 5) == Tuples{{0}, {2}, {3}});
  auto other = GaloisStratification({}, {"x"}, {{CoverSpec::trivial(on("x = x")), ConjDomain::empty(FiniteGroup::trivial())}});
  CHECK(kind_of([&] { boolean_combine(a, other, BoolMode::Or); }) == ErrorKind::NotCommonStratification);
  CHECK(kind_of([&] { boolean_combine(a, square_strat({{0}}, "y"), BoolMode::Or); }) == ErrorKind::VariableMismatch);
}

TEST_CASE("product examples") {
  auto v = FiniteGroup::direct_product(kZ2, kZ2);
  auto p1 = GroupHom::projection(v, kZ2, kZ2, 0), p2 = GroupHom::projection(v, kZ2, kZ2, 1);
  auto a = square_strat({{0}}, "x"), b = square_strat({{0}}, "y");
  auto prod = product(a, b, {{0, ProductWitness{v, p1, p2}}});
  REQUIRE(prod.strata().size() == 4);
  CHECK(prod.strata()[0].con.subs() == std::set<Subgroup>{{0}});
  for (std::uint32_t p : {5u, 7u}) {
    Tuples expect;
    for (const auto& x : nonzero_where(p, true))
      for (const auto& y : nonzero_where(p, true)) expect.push_back({x[0], y[0]});
    CHECK(points(prod, p) == expect);
  }
  auto empty = product(a, square_strat({}, "y"));
  CHECK(empty.support().empty());
  CHECK(kind_of([&] { product(a, square_strat({{0}}, "x")); }) == ErrorKind::VariableMismatch);
}

TEST_CASE("base change specializes a family") {
  auto fam = GaloisStratification({"z"}, {"x"},
                                  {{CoverSpec::kummer(2, parse_poly("z*x"), parse_formula("x != 0", {"z"}, std::vector<std::string>{"x"})),
                                    ConjDomain(kZ2, {{0}})},
                                   {CoverSpec::trivial(parse_formula("x = 0", {"z"}, std::vector<std::string>{"x"})),
                                    ConjDomain::empty(FiniteGroup::trivial())}});
  auto at2 = base_change(fam, {{"z", parse_poly("2")}}, {});
  for (std::uint32_t p : {5u, 7u, 11u}) {
    auto k = make_field(p);
    std::vector<Elem> s{2};
    CHECK(galois_set(at2, {}, k).tuples == galois_set(fam, s, k).tuples);
  }
}

TEST_CASE("elimination case examples on the conjugation-domain level") {
  auto triv = FiniteGroup::trivial();
  Stratum a{CoverSpec::trivial(on("x != 0")), ConjDomain::all(triv)};
  EliminationDatum c1{EliminationCase::Case1, 0, 0, GroupHom(triv, kZ2, {0}), std::nullopt, std::nullopt};
  CHECK(eliminate_case1(a, c1).subs() == std::set<Subgroup>{{0}});
  Stratum none{CoverSpec::trivial(on("x != 0")), ConjDomain::empty(triv)};
  CHECK(eliminate_case1(none, c1).empty_domain());
  CHECK(kind_of([&] { eliminate_case1(a, {EliminationCase::Case1, 0, 0, GroupHom(kZ2, triv, {0, 0}), std::nullopt, std::nullopt}); }) ==
        ErrorKind::EmbeddingInvalid);

  Stratum ns{square_cover(), ConjDomain(kZ2, {{0, 1}})};
  EliminationDatum c2{EliminationCase::Case2, 0, 0, GroupHom(kZ2, triv, {0, 0}), std::nullopt, std::nullopt};
  CHECK(eliminate_case2(ns, c2).subs() == std::set<Subgroup>{{0}});
  EliminationDatum iso{EliminationCase::Case2, 0, 0, GroupHom::identity(kZ2), std::nullopt, std::nullopt};
  CHECK(eliminate_case2(ns, iso).subs() == std::set<Subgroup>{{0, 1}});
  CHECK(eliminate_case2({square_cover(), ConjDomain::empty(kZ2)}, iso).empty_domain());
  auto z4 = FiniteGroup::cyclic(4);
  CHECK(kind_of([&] { eliminate_case2(ns, {EliminationCase::Case2, 0, 0, GroupHom(kZ2, z4, {0, 2}), std::nullopt, std::nullopt}); }) ==
        ErrorKind::SurjectionInvalid);
}

TEST_CASE("elimination fixtures match their projections") {
  Sweep f5{{make_field(5)}, std::nullopt};
  auto c1 = load_fixture(kFixtures + "/elim_case1_squaring.json");
  auto out = eliminate_existential(*c1.elimination, f5).output;
  CHECK(galois_set(out, {}, make_field(5)).tuples == Tuples{{1}, {4}});
  Sweep f5_13{{make_field(5), make_field(13)}, std::nullopt};
  CHECK(eliminate_existential(*c1.elimination, f5_13).checked_q == std::vector<std::uint32_t>{5, 13});

  auto all = load_fixture(kFixtures + "/elim_case1_forall.json");
  auto dual = eliminate_existential(*all.elimination, f5).output;
  CHECK(galois_set(dual, {}, make_field(5)).tuples == Tuples{{0}, {2}, {3}});

  auto fib = load_fixture(kFixtures + "/elim_case2_fiberwise.json");
  Sweep odd{{make_field(5), make_field(7), make_field(11)}, std::nullopt};
  auto sentence = eliminate_existential(*fib.elimination, odd).output;
  for (std::uint32_t p : {5u, 7u, 11u}) CHECK(galois_set(sentence, {}, make_field(p)).size() == 1);

  auto pb = load_fixture(kFixtures + "/elim_case2_pullback.json");
  auto fam = eliminate_existential(*pb.elimination, f5).output;
  Tuples hits;
  for (Elem z = 0; z < 5; ++z) {
    std::vector<Elem> s{z};
    if (!galois_set(fam, s, make_field(5)).empty()) hits.push_back({z});
  }
  CHECK(hits == Tuples{{2}, {3}});
}

TEST_CASE("empty support eliminates to empty support") {
  auto c1 = load_fixture(kFixtures + "/elim_case1_squaring.json");
  auto p = *c1.elimination;
  std::vector<Stratum> strata;
  for (const auto& s : p.input.strata()) strata.push_back({s.cover, ConjDomain::empty(s.cover.group())});
  p.input = GaloisStratification(p.input.params(), p.input.vars(), strata);
  CHECK(eliminate_transform(p).support().empty());
}
