#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfs/stratification.hpp"

namespace pfs {

enum class EliminationCase { Case1, Case2 };

// How one support stratum C/A of the input projects to a base stratum B_j.
//   Case1 (dim A = dim B): hom embeds G(D/A) into G(D/B); `inflation` maps
//     G(D/A) onto G(C/A) (identity when absent).
//   Case2 (dim A = dim B + 1): hom maps G(C/A) onto G(D/B).
// G(D/B) is hom's target. When it differs from the group of the base cover
// D_j/B_j, `dominate` maps G(D_j/B_j) onto it.
struct EliminationDatum {
  EliminationCase variant = EliminationCase::Case1;
  std::size_t stratum = 0;  // input stratum index
  std::size_t base = 0;     // base stratum index
  GroupHom hom;
  std::optional<GroupHom> inflation;
  std::optional<GroupHom> dominate;
};

// Conjugation domain on G(D/B) produced by one datum.
ConjDomain eliminate_case1(const Stratum& s, const EliminationDatum& d);
ConjDomain eliminate_case2(const Stratum& s, const EliminationDatum& d);

// Input over params with coordinates base_vars ++ [var]; output over
// params with coordinates base_vars, one stratum per base cover.
struct EliminationProblem {
  GaloisStratification input;
  std::string var;
  bool universal = false;
  std::vector<CoverSpec> base;  // D_j/B_j, partitioning the base space
  std::vector<EliminationDatum> data;
};

struct EliminationResult {
  GaloisStratification output;
  // Fields and base points on which the set-level contract was checked.
  std::size_t checked_fibers = 0;
  std::vector<std::uint32_t> checked_q;
};

// Transforms conjugation domains only (no semantic check). Universal
// problems are handled as complement -> exists -> complement.
GaloisStratification eliminate_transform(const EliminationProblem& p);

// Projection of Z(input) (or its universal dual) onto the base coordinates.
DefinableSet projected_set(const EliminationProblem& p, std::span<const Elem> s_point, const FiniteField& k);

// eliminate_transform followed by brute-force validation on every
// admissible field of the sweep; SemanticMismatch carries the first
// differing (field, base point, tuple).
EliminationResult eliminate_existential(const EliminationProblem& p, const Sweep& sweep);

}  // namespace pfs
