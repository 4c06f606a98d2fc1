#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pfs/cover.hpp"
#include "pfs/formula.hpp"
#include "pfs/group.hpp"

namespace pfs {

struct Stratum {
  CoverSpec cover;
  ConjDomain con;
};

// Strata of affine space over the base, each with a cover and a conjugation
// domain. Coordinates are `vars`; base coordinates are `params`.
class GaloisStratification {
 public:
  GaloisStratification(std::vector<std::string> params, std::vector<std::string> vars, std::vector<Stratum> strata,
                       std::string label = {});

  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t ambient() const { return vars_.size(); }
  const std::vector<Stratum>& strata() const { return strata_; }
  const std::string& label() const { return label_; }
  // Indices of strata with a nonempty conjugation domain.
  std::vector<std::size_t> support() const;
  Admissible admissible() const;

 private:
  std::vector<std::string> params_, vars_;
  std::vector<Stratum> strata_;
  std::string label_;
};

// Z(A, s, F_q) = {a : Ar(a) in Con of the unique stratum containing a}.
// PartitionViolation when a tuple lies on no stratum or on several.
DefinableSet galois_set(const GaloisStratification& strat, std::span<const Elem> s_point, const FiniteField& k);

// Con' = cyclic subgroups of G' whose psi-image lies in Con.
Stratum inflate(const Stratum& s, const GroupHom& psi, const CoverSpec& new_cover);

struct RefinementChild {
  Formula formula;           // over the parent's coordinates
  Subgroup decomposition;    // subgroup of the parent group
  std::optional<CoverSpec> cover;  // defaults to the parent cover restricted to the decomposition subgroup
  std::optional<GroupHom> embedding;  // child group -> parent group, required with an explicit cover
};

struct RefinementDatum {
  std::size_t parent = 0;
  std::vector<RefinementChild> children;
};

GaloisStratification refine(const GaloisStratification& strat, const std::vector<RefinementDatum>& data);

// Per-stratum decomposition subgroups of the pulled-back covers (optional).
struct PullbackDatum {
  std::size_t stratum = 0;
  Subgroup decomposition;
};

// Strata over new coordinates with a in Z(pullback) iff f(a) in Z(strat).
GaloisStratification pullback(const GaloisStratification& strat, const std::map<std::string, Poly>& var_map,
                              std::vector<std::string> new_vars, const std::vector<PullbackDatum>& data = {});

enum class BoolMode { And, Or };
GaloisStratification boolean_combine(const GaloisStratification& a, const GaloisStratification& b, BoolMode mode);
GaloisStratification complement(const GaloisStratification& a);

// Substitutes base parameters in every stratum and cover; the result lives
// over `new_params`.
GaloisStratification base_change(const GaloisStratification& a, const std::map<std::string, Poly>& values,
                                 std::vector<std::string> new_params);

// Optional witness per product stratum (i * |B| + j).
GaloisStratification product(const GaloisStratification& a, const GaloisStratification& b,
                             const std::map<std::size_t, ProductWitness>& witnesses = {});

// Fields in the sweep that every cover admits.
std::vector<FiniteField> admissible_fields(const GaloisStratification& strat, const std::vector<FiniteField>& fields);

}  // namespace pfs
