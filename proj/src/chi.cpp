#include "pfs/chi.hpp"

#include <algorithm>

#include "pfs/errors.hpp"

namespace pfs {

void QuotientClassData::set(const Subgroup& h, MotiveClass cls) {
  if (!g_.is_subgroup(h)) fail(ErrorKind::NotASubgroup, subgroup_to_string(g_, h) + " is not a subgroup");
  auto key = g_.canonical(h);
  auto it = classes_.find(key);
  if (it != classes_.end() && !(it->second == cls))
    fail(ErrorKind::NotConjugationStable,
         "conjugate subgroups " + subgroup_to_string(g_, h) + " and " + subgroup_to_string(g_, key) + " have different quotient classes");
  classes_[key] = std::move(cls);
}

bool QuotientClassData::has(const Subgroup& h) const { return classes_.count(g_.canonical(h)) > 0; }

const MotiveClass& QuotientClassData::get(const Subgroup& h) const {
  auto it = classes_.find(g_.canonical(h));
  if (it == classes_.end()) fail(ErrorKind::MissingQuotient, "no class for Y/" + subgroup_to_string(g_, h));
  return it->second;
}

QuotientClassData QuotientClassData::auto_named(const FiniteGroup& g, const std::string& label) {
  QuotientClassData d(g);
  for (const auto& cls : cyclic_subgroup_classes(g)) {
    const auto& h = cls.front();
    d.set(h, MotiveClass::generator(h.size() == 1 ? label : label + "/" + std::to_string(h.size())));
  }
  return d;
}

MotiveClass chi_c_alpha(const QCentralFunction& alpha, const QuotientClassData& data) {
  if (!(alpha.group() == data.group())) fail(ErrorKind::GroupMismatch, "quotient data lives on a different group");
  MotiveClass out;
  for (const auto& t : artin_decompose(alpha))
    if (t.coeff != 0) out = out + data.get(t.rep).scaled(t.coeff);
  return out;
}

std::vector<std::pair<Subgroup, MotiveClass>> chi_levels(const FiniteGroup& g, const Subgroup& c,
                                                         const QuotientClassData& data) {
  if (!g.is_cyclic(c)) fail(ErrorKind::NotCyclic, subgroup_to_string(g, c) + " is not a cyclic subgroup");
  auto subs = g.cyclic_subgroups_of(c);
  std::stable_sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<std::pair<Subgroup, MotiveClass>> levels;
  for (const auto& a : subs) {
    const long order = static_cast<long>(a.size());
    MotiveClass acc = data.get(a).scaled(order);
    for (const auto& [b, lvl] : levels)
      if (b.size() < a.size() && std::includes(a.begin(), a.end(), b.begin(), b.end()))
        acc = acc - lvl.scaled(static_cast<long>(b.size()));
    levels.emplace_back(a, acc.scaled(make_rational(1, order)));
  }
  return levels;
}

MotiveClass chi_formula_class(const FiniteGroup& g, const Subgroup& c, const QuotientClassData& data) {
  return chi_levels(g, c, data).back().second;
}

MotiveClass chi_stratification(const GaloisStratification& strat,
                               const std::vector<std::optional<QuotientClassData>>& data) {
  MotiveClass out;
  for (auto i : strat.support()) {
    if (i >= data.size() || !data[i])
      fail(ErrorKind::MissingData, "support stratum " + std::to_string(i) + " has no quotient class data");
    out = out + chi_c_alpha(alpha_from_conj_domain(strat.strata()[i].con), *data[i]);
  }
  return out;
}

ChiReport verify_specialization(const MotiveClass& cls, const GaloisStratification& strat, const CountTable& table,
                                const Sweep& sweep) {
  ChiReport r;
  r.cls = cls;
  for (const auto& k : admissible_fields(strat, sweep.fields))
    for (const auto& s : s_points_for(sweep, k, strat.params().size())) {
      ChiRow row;
      row.q = k.q();
      row.s_point = s;
      row.specialized = specialize(cls, k.q(), table, s);
      row.counted = static_cast<unsigned long>(galois_set(strat, s, k).size());
      row.match = row.specialized == Rational(row.counted);
      if (!row.match && r.pass) {
        r.pass = false;
        r.first_failure = row;
      }
      r.rows.push_back(std::move(row));
    }
  return r;
}

}  // namespace pfs
