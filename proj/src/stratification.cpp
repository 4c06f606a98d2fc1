#include "pfs/stratification.hpp"

#include <algorithm>

#include "pfs/errors.hpp"

namespace pfs {

namespace {
std::string tuple_to_string(std::span<const Elem> t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}
}  // namespace

GaloisStratification::GaloisStratification(std::vector<std::string> params, std::vector<std::string> vars,
                                           std::vector<Stratum> strata, std::string label)
    : params_(std::move(params)), vars_(std::move(vars)), strata_(std::move(strata)), label_(std::move(label)) {
  for (std::size_t i = 0; i < strata_.size(); ++i) {
    const auto& s = strata_[i];
    if (s.cover.stratum().params() != params_ || s.cover.stratum().free_vars() != vars_)
      fail(ErrorKind::VariableMismatch, "stratum " + std::to_string(i) + " uses different coordinates");
    if (!(s.con.group() == s.cover.group()))
      fail(ErrorKind::GroupMismatch, "conjugation domain of stratum " + std::to_string(i) + " is not in its cover group");
  }
}

std::vector<std::size_t> GaloisStratification::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < strata_.size(); ++i)
    if (!strata_[i].con.empty_domain()) out.push_back(i);
  return out;
}

Admissible GaloisStratification::admissible() const {
  Admissible a;
  for (const auto& s : strata_) a = a.merged(s.cover.admissible());
  return a;
}

DefinableSet galois_set(const GaloisStratification& strat, std::span<const Elem> s_point, const FiniteField& k) {
  if (s_point.size() != strat.params().size()) fail(ErrorKind::InvalidArgument, "base point has the wrong dimension");
  std::vector<BoundCover> bound;
  for (const auto& s : strat.strata()) bound.emplace_back(s.cover, k);
  DefinableSet out;
  out.q = k.q();
  out.s_point.assign(s_point.begin(), s_point.end());
  out.arity = strat.ambient();
  for (auto& a : all_points(k, strat.ambient())) {
    std::size_t hit = SIZE_MAX, hits = 0;
    for (std::size_t i = 0; i < bound.size(); ++i)
      if (bound[i].on_stratum(s_point, a)) {
        ++hits;
        if (hit == SIZE_MAX) hit = i;
      }
    if (hits != 1)
      throw Error(ErrorKind::PartitionViolation,
                  "point " + tuple_to_string(a) + " over " + k.name() + " lies on " + std::to_string(hits) + " strata",
                  {k.name(), tuple_to_string(s_point), tuple_to_string(a)});
    const auto& s = strat.strata()[hit];
    const GElem g = bound[hit].frobenius(s_point, a);
    if (s.con.contains(s.cover.group().cyclic_subgroup(g))) out.tuples.push_back(std::move(a));
  }
  return out;
}

Stratum inflate(const Stratum& s, const GroupHom& psi, const CoverSpec& new_cover) {
  if (!psi.surjective()) fail(ErrorKind::NotSurjective, "inflation needs a surjective homomorphism");
  if (!(psi.target() == s.cover.group())) fail(ErrorKind::GroupMismatch, "inflation map does not land in the cover group");
  if (!(psi.source() == new_cover.group())) fail(ErrorKind::GroupMismatch, "inflation map does not start at the new cover group");
  return {new_cover, inflate_domain(psi, s.con)};
}

GaloisStratification refine(const GaloisStratification& strat, const std::vector<RefinementDatum>& data) {
  std::map<std::size_t, const RefinementDatum*> by_parent;
  for (const auto& d : data) {
    if (d.parent >= strat.strata().size()) fail(ErrorKind::InvalidArgument, "refinement of a nonexistent stratum");
    if (!by_parent.emplace(d.parent, &d).second) fail(ErrorKind::InvalidArgument, "stratum refined twice");
  }
  std::vector<Stratum> out;
  for (std::size_t i = 0; i < strat.strata().size(); ++i) {
    const auto& parent = strat.strata()[i];
    auto it = by_parent.find(i);
    if (it == by_parent.end()) {
      out.push_back(parent);
      continue;
    }
    const auto& G = parent.cover.group();
    for (const auto& child : it->second->children) {
      if (!G.is_subgroup(child.decomposition))
        fail(ErrorKind::NotASubgroup, subgroup_to_string(G, child.decomposition) + " is not a subgroup of the parent group");
      if (child.formula.params() != strat.params() || child.formula.free_vars() != strat.vars())
        fail(ErrorKind::VariableMismatch, "child formula uses different coordinates");
      if (child.cover) {
        if (!child.embedding) fail(ErrorKind::InvalidArgument, "explicit child cover needs an embedding");
        const auto& e = *child.embedding;
        if (!(e.source() == child.cover->group()) || !(e.target() == G) || !e.injective())
          fail(ErrorKind::EmbeddingInvalid, "child embedding must inject the child group into the parent group");
        Subgroup whole(e.source().order());
        for (GElem x = 0; x < whole.size(); ++x) whole[x] = x;
        if (e.image(whole) != child.decomposition)
          fail(ErrorKind::EmbeddingInvalid, "child embedding does not have the declared decomposition subgroup as image");
        out.push_back({*child.cover, inflate_domain(e, parent.con)});
      } else {
        auto e = subgroup_embedding(G, child.decomposition);
        auto cover = CoverSpec::restricted(parent.cover, e, child.formula);
        out.push_back({cover, inflate_domain(e, parent.con)});
      }
    }
  }
  return GaloisStratification(strat.params(), strat.vars(), std::move(out), strat.label());
}

GaloisStratification pullback(const GaloisStratification& strat, const std::map<std::string, Poly>& var_map,
                              std::vector<std::string> new_vars, const std::vector<PullbackDatum>& data) {
  std::map<std::size_t, const Subgroup*> decomp;
  for (const auto& d : data) decomp[d.stratum] = &d.decomposition;
  std::vector<Stratum> out;
  for (std::size_t i = 0; i < strat.strata().size(); ++i) {
    const auto& s = strat.strata()[i];
    auto cover = CoverSpec::pullback(s.cover, var_map, new_vars);
    auto it = decomp.find(i);
    if (it == decomp.end()) {
      out.push_back({cover, s.con});
      continue;
    }
    auto e = subgroup_embedding(s.cover.group(), *it->second);
    Formula whole(strat.params(), new_vars, node::truth());
    out.push_back({CoverSpec::restricted(cover, e, whole), inflate_domain(e, s.con)});
  }
  return GaloisStratification(strat.params(), std::move(new_vars), std::move(out), strat.label());
}

namespace {
void require_common(const GaloisStratification& a, const GaloisStratification& b) {
  if (a.ambient() != b.ambient()) fail(ErrorKind::DimMismatch, "stratifications have different ambient dimensions");
  if (a.params() != b.params() || a.vars() != b.vars())
    fail(ErrorKind::VariableMismatch, "stratifications use different coordinates");
  if (a.strata().size() != b.strata().size())
    fail(ErrorKind::NotCommonStratification, "stratifications have different numbers of strata");
  for (std::size_t i = 0; i < a.strata().size(); ++i)
    if (!a.strata()[i].cover.same_cover(b.strata()[i].cover))
      fail(ErrorKind::NotCommonStratification, "stratum " + std::to_string(i) + " carries different covers");
}
}  // namespace

GaloisStratification boolean_combine(const GaloisStratification& a, const GaloisStratification& b, BoolMode mode) {
  require_common(a, b);
  std::vector<Stratum> out;
  for (std::size_t i = 0; i < a.strata().size(); ++i) {
    const auto& x = a.strata()[i];
    const auto& y = b.strata()[i];
    out.push_back({x.cover, mode == BoolMode::Or ? x.con.unite(y.con) : x.con.intersect(y.con)});
  }
  return GaloisStratification(a.params(), a.vars(), std::move(out));
}

GaloisStratification complement(const GaloisStratification& a) {
  std::vector<Stratum> out;
  for (const auto& s : a.strata()) out.push_back({s.cover, s.con.complement()});
  return GaloisStratification(a.params(), a.vars(), std::move(out), a.label().empty() ? "" : a.label() + "^c");
}

GaloisStratification product(const GaloisStratification& a, const GaloisStratification& b,
                             const std::map<std::size_t, ProductWitness>& witnesses) {
  if (a.params() != b.params()) fail(ErrorKind::VariableMismatch, "product factors have different base parameters");
  auto vars = a.vars();
  vars.insert(vars.end(), b.vars().begin(), b.vars().end());
  std::vector<Stratum> out;
  for (std::size_t i = 0; i < a.strata().size(); ++i)
    for (std::size_t j = 0; j < b.strata().size(); ++j) {
      const auto& x = a.strata()[i];
      const auto& y = b.strata()[j];
      auto it = witnesses.find(i * b.strata().size() + j);
      auto cover = CoverSpec::product(x.cover, y.cover,
                                      it == witnesses.end() ? std::nullopt : std::optional<ProductWitness>(it->second));
      const auto& w = *cover.witness();
      out.push_back({cover, inflate_domain(w.p1, x.con).intersect(inflate_domain(w.p2, y.con))});
    }
  return GaloisStratification(a.params(), std::move(vars), std::move(out));
}

std::vector<FiniteField> admissible_fields(const GaloisStratification& strat, const std::vector<FiniteField>& fields) {
  std::vector<FiniteField> out;
  for (const auto& k : fields) {
    bool ok = true;
    for (const auto& s : strat.strata()) {
      try {
        BoundCover b(s.cover, k);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::InadmissiblePrime) throw;
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(k);
  }
  return out;
}

GaloisStratification base_change(const GaloisStratification& a, const std::map<std::string, Poly>& values,
                                 std::vector<std::string> new_params) {
  std::vector<Stratum> strata;
  for (const auto& s : a.strata()) strata.push_back({CoverSpec::base_change(s.cover, values, new_params), s.con});
  return GaloisStratification(std::move(new_params), a.vars(), std::move(strata), a.label());
}

}  // namespace pfs
