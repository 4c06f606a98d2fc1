#include "pfs/elimination.hpp"

#include <algorithm>

#include "pfs/errors.hpp"

namespace pfs {

namespace {

std::set<Subgroup> images(const GroupHom& h, const ConjDomain& con) {
  std::set<Subgroup> out;
  for (const auto& s : con.subs()) out.insert(h.image(s));
  return out;
}

std::string tuple_to_string(std::span<const Elem> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

ConjDomain eliminate_case1(const Stratum& s, const EliminationDatum& d) {
  const auto& emb = d.hom;
  if (!emb.injective()) fail(ErrorKind::EmbeddingInvalid, "Case 1 needs G(D/A) to embed into G(D/B)");
  ConjDomain con_prime = ConjDomain::empty(emb.source());
  if (d.inflation) {
    const auto& infl = *d.inflation;
    if (!(infl.source() == emb.source()) || !(infl.target() == s.cover.group()))
      fail(ErrorKind::EmbeddingInvalid, "inflation must map G(D/A) to the stratum's cover group");
    if (!infl.surjective()) fail(ErrorKind::EmbeddingInvalid, "inflation map G(D/A) -> G(C/A) is not surjective");
    con_prime = inflate_domain(infl, s.con);
  } else {
    if (!(emb.source() == s.cover.group()))
      fail(ErrorKind::EmbeddingInvalid, "without an inflation map G(D/A) must be the stratum's cover group");
    con_prime = s.con;
  }
  // Closure under conjugation by all of G(D/B).
  return ConjDomain::closure(emb.target(), images(emb, con_prime));
}

ConjDomain eliminate_case2(const Stratum& s, const EliminationDatum& d) {
  const auto& res = d.hom;
  if (!(res.source() == s.cover.group()))
    fail(ErrorKind::SurjectionInvalid, "Case 2 restriction must start at the stratum's cover group");
  if (!res.surjective()) fail(ErrorKind::SurjectionInvalid, "Case 2 restriction G(C/A) -> G(D/B) is not surjective");
  return ConjDomain::closure(res.target(), images(res, s.con));
}

namespace {

std::vector<std::string> base_vars_of(const EliminationProblem& p) {
  const auto& vars = p.input.vars();
  if (vars.empty() || vars.back() != p.var)
    fail(ErrorKind::InvalidArgument, "eliminated variable '" + p.var + "' must be the last coordinate");
  return {vars.begin(), vars.end() - 1};
}

}  // namespace

GaloisStratification eliminate_transform(const EliminationProblem& p) {
  const auto base_vars = base_vars_of(p);
  if (p.base.empty()) fail(ErrorKind::MissingDatum, "no base strata supplied");
  for (std::size_t j = 0; j < p.base.size(); ++j)
    if (p.base[j].stratum().params() != p.input.params() || p.base[j].stratum().free_vars() != base_vars)
      fail(ErrorKind::VariableMismatch, "base stratum " + std::to_string(j) + " uses different coordinates");

  const GaloisStratification source = p.universal ? complement(p.input) : p.input;
  std::vector<ConjDomain> cons;
  for (const auto& b : p.base) cons.push_back(ConjDomain::empty(b.group()));

  for (auto i : source.support()) {
    auto it = std::find_if(p.data.begin(), p.data.end(), [&](const EliminationDatum& d) { return d.stratum == i; });
    if (it == p.data.end())
      fail(ErrorKind::MissingDatum, "support stratum " + std::to_string(i) + " has no elimination datum");
    for (; it != p.data.end(); it = std::find_if(std::next(it), p.data.end(),
                                                 [&](const EliminationDatum& d) { return d.stratum == i; })) {
      const auto& d = *it;
      if (d.base >= p.base.size()) fail(ErrorKind::MissingDatum, "datum refers to a nonexistent base stratum");
      const auto& s = source.strata()[i];
      ConjDomain con = d.variant == EliminationCase::Case1 ? eliminate_case1(s, d) : eliminate_case2(s, d);
      const auto& target_group = p.base[d.base].group();
      if (d.dominate) {
        const auto& dom = *d.dominate;
        if (!(dom.source() == target_group) || !(dom.target() == con.group()) || !dom.surjective())
          fail(ErrorKind::SurjectionInvalid, "dominating map must send the base cover group onto G(D/B)");
        con = inflate_domain(dom, con);
      } else if (!(con.group() == target_group)) {
        fail(ErrorKind::GroupMismatch, "G(D/B) of a datum differs from its base cover group and no dominating map is given");
      }
      cons[d.base] = cons[d.base].unite(con);
    }
  }

  std::vector<Stratum> strata;
  for (std::size_t j = 0; j < p.base.size(); ++j) strata.push_back({p.base[j], cons[j]});
  GaloisStratification out(p.input.params(), base_vars, std::move(strata));
  return p.universal ? complement(out) : out;
}

DefinableSet projected_set(const EliminationProblem& p, std::span<const Elem> s_point, const FiniteField& k) {
  const auto base_vars = base_vars_of(p);
  const auto z = galois_set(p.input, s_point, k);
  DefinableSet out;
  out.q = k.q();
  out.s_point.assign(s_point.begin(), s_point.end());
  out.arity = base_vars.size();
  // Tuples of z are sorted, so each base point's fiber is contiguous.
  std::map<std::vector<Elem>, std::size_t> fiber;
  for (const auto& t : z.tuples) fiber[std::vector<Elem>(t.begin(), t.end() - 1)] += 1;
  for (auto& b : all_points(k, base_vars.size())) {
    auto it = fiber.find(b);
    const std::size_t n = it == fiber.end() ? 0 : it->second;
    if (p.universal ? n == k.q() : n > 0) out.tuples.push_back(std::move(b));
  }
  return out;
}

EliminationResult eliminate_existential(const EliminationProblem& p, const Sweep& sweep) {
  EliminationResult r{eliminate_transform(p), 0, {}};
  auto fields = admissible_fields(r.output, admissible_fields(p.input, sweep.fields));
  for (const auto& k : fields) {
    r.checked_q.push_back(k.q());
    for (const auto& s : s_points_for(sweep, k, p.input.params().size())) {
      auto lhs = galois_set(r.output, s, k);
      auto rhs = projected_set(p, s, k);
      ++r.checked_fibers;
      if (lhs.tuples == rhs.tuples) continue;
      std::vector<Elem> witness;
      std::string side;
      for (const auto& t : lhs.tuples)
        if (!rhs.contains(t)) {
          witness = t;
          side = "in the eliminated stratification but not in the projection";
          break;
        }
      if (side.empty())
        for (const auto& t : rhs.tuples)
          if (!lhs.contains(t)) {
            witness = t;
            side = "in the projection but not in the eliminated stratification";
            break;
          }
      throw Error(ErrorKind::SemanticMismatch,
                  "over " + k.name() + " at base point " + tuple_to_string(s) + ", " + tuple_to_string(witness) + " is " +
                      side,
                  {k.name(), tuple_to_string(s), tuple_to_string(witness)});
    }
  }
  return r;
}

}  // namespace pfs
