#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pfs/central.hpp"
#include "pfs/motive.hpp"
#include "pfs/stratification.hpp"

namespace pfs {

// Classes [Y/H] keyed by canonical cyclic-subgroup representatives.
class QuotientClassData {
 public:
  explicit QuotientClassData(FiniteGroup g) : g_(std::move(g)) {}
  // Stores under the canonical representative; conjugate subgroups must
  // agree (NotConjugationStable otherwise).
  void set(const Subgroup& h, MotiveClass cls);
  // MissingQuotient when absent.
  const MotiveClass& get(const Subgroup& h) const;
  bool has(const Subgroup& h) const;
  const FiniteGroup& group() const { return g_; }
  const std::map<Subgroup, MotiveClass>& classes() const { return classes_; }

  // [Y/H] = [label] for H = 1 and [label/|H|] otherwise; enough for Kummer
  // covers of a torus, where every quotient is again a Kummer cover.
  static QuotientClassData auto_named(const FiniteGroup& g, const std::string& label);

 private:
  FiniteGroup g_;
  std::map<Subgroup, MotiveClass> classes_;
};

// chi_{c,alpha}([Y]) = sum_H c_H [Y/H] over the Artin decomposition of alpha.
MotiveClass chi_c_alpha(const QCentralFunction& alpha, const QuotientClassData& data);

// The recursion |C| [Y/C] = sum_{A <= C} |A| level(A) solved bottom-up. C
// must be cyclic; returns level(A) for every subgroup A of C in increasing
// order, the last entry being C itself.
std::vector<std::pair<Subgroup, MotiveClass>> chi_levels(const FiniteGroup& g, const Subgroup& c,
                                                         const QuotientClassData& data);
MotiveClass chi_formula_class(const FiniteGroup& g, const Subgroup& c, const QuotientClassData& data);

// sum over support strata of chi_{c, alpha_Con}([C_i]). MissingData when a
// support stratum has no quotient data.
MotiveClass chi_stratification(const GaloisStratification& strat,
                               const std::vector<std::optional<QuotientClassData>>& data);

struct ChiRow {
  std::uint32_t q = 0;
  std::vector<Elem> s_point;
  Rational specialized;
  Integer counted;
  bool match = false;
};

struct ChiReport {
  MotiveClass cls;
  std::vector<ChiRow> rows;
  bool pass = true;
  std::optional<ChiRow> first_failure;
};

// Compares specialize(cls) with |galois_set(strat)| on every admissible
// field of the sweep; mismatches are reported, not thrown.
ChiReport verify_specialization(const MotiveClass& cls, const GaloisStratification& strat, const CountTable& table,
                                const Sweep& sweep);

}  // namespace pfs
