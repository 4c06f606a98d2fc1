#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/formula.hpp"
#include "pfs/group.hpp"
#include "pfs/poly.hpp"

namespace pfs {

// Which finite fields a fixture allows: congruence conditions on q and
// excluded characteristics (bad reduction is declared, never inferred).
struct Admissible {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> congruences;  // (modulus, residue)
  std::vector<std::uint32_t> exclude;

  bool admits(std::uint32_t q, std::uint32_t p) const;
  bool admits(const FiniteField& k) const { return admits(k.q(), k.p()); }
  Admissible merged(const Admissible& o) const;
  std::string describe() const;
};

enum class CoverKind { Trivial, Kummer, Tabulated, Product, Restricted, Pullback };

std::string to_string(CoverKind kind);

struct TabKey {
  std::uint32_t q = 0;
  std::vector<Elem> s_point;
  std::vector<Elem> point;
  auto operator<=>(const TabKey&) const = default;
};

// Witness group for a product cover: V with maps onto both factor groups;
// (p1, p2) must be jointly injective so a Frobenius pair names one element.
struct ProductWitness {
  FiniteGroup v;
  GroupHom p1, p2;
};

// An explicit Galois cover C/A of a quantifier-free stratum A. The
// stratum's free variables are the ambient coordinates.
class CoverSpec {
 public:
  static CoverSpec trivial(Formula stratum, Admissible adm = {});
  // u^n = f over the stratum; the stratum is conjoined with f != 0 and the
  // group is Z/n, with 1 acting as u -> zeta u for zeta = gen^((q-1)/n).
  static CoverSpec kummer(std::uint32_t n, Poly f, Formula stratum, Admissible adm = {});
  static CoverSpec tabulated(FiniteGroup g, Formula stratum, std::map<TabKey, GElem> table,
                             std::optional<GElem> default_frob, Admissible adm = {});
  // Cover of A x B (disjoint coordinate names). Without a witness the group
  // is the direct product.
  static CoverSpec product(const CoverSpec& a, const CoverSpec& b, std::optional<ProductWitness> witness = std::nullopt);
  // The parent cover over a sub-stratum, with group the decomposition
  // subgroup given as an embedding into the parent group.
  static CoverSpec restricted(const CoverSpec& parent, GroupHom embedding, Formula stratum);
  // f^* of the cover for a coordinate substitution var -> polynomial in the
  // new coordinates.
  static CoverSpec pullback(const CoverSpec& inner, const std::map<std::string, Poly>& var_map,
                            std::vector<std::string> new_vars);
  // Substitutes base parameters (e.g. specializing a family at a point).
  // Supported for trivial, Kummer and product covers.
  static CoverSpec base_change(const CoverSpec& c, const std::map<std::string, Poly>& values,
                               std::vector<std::string> new_params);

  CoverKind kind() const { return kind_; }
  const FiniteGroup& group() const { return group_; }
  const Formula& stratum() const { return stratum_; }
  const Admissible& admissible() const { return adm_; }
  std::uint32_t kummer_degree() const { return n_; }
  const Poly& kummer_poly() const { return f_; }
  const std::map<TabKey, GElem>& table() const { return table_; }
  const std::optional<GElem>& default_frob() const { return default_frob_; }
  const std::shared_ptr<const CoverSpec>& left() const { return left_; }
  const std::shared_ptr<const CoverSpec>& right() const { return right_; }
  const std::shared_ptr<const CoverSpec>& inner() const { return inner_; }
  const std::optional<ProductWitness>& witness() const { return witness_; }
  const std::optional<GroupHom>& embedding() const { return embedding_; }
  const std::vector<Poly>& pre_map() const { return pre_map_; }

  // Structural equality of kind, group and stratum formula; used to check
  // that two stratifications share their covers.
  bool same_cover(const CoverSpec& o) const;

 private:
  CoverSpec(CoverKind kind, FiniteGroup g, Formula stratum) : kind_(kind), group_(std::move(g)), stratum_(std::move(stratum)) {}
  CoverKind kind_;
  FiniteGroup group_;
  Formula stratum_;
  Admissible adm_;
  std::uint32_t n_ = 0;
  Poly f_;
  std::map<TabKey, GElem> table_;
  std::optional<GElem> default_frob_;
  std::shared_ptr<const CoverSpec> left_, right_, inner_;
  std::optional<ProductWitness> witness_;
  std::optional<GroupHom> embedding_;
  std::vector<Poly> pre_map_;  // inner coordinates in terms of this cover's coordinates
};

// A cover compiled against one field for fast repeated evaluation.
class BoundCover {
 public:
  BoundCover(const CoverSpec& c, const FiniteField& k);
  ~BoundCover();
  BoundCover(BoundCover&&) noexcept;

  bool on_stratum(std::span<const Elem> s_point, std::span<const Elem> a) const;
  // A Frobenius element at a point of the stratum (not re-checked).
  GElem frobenius(std::span<const Elem> s_point, std::span<const Elem> a) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Ar(a): canonical representative of the class of <Frob_a>.
Subgroup decomposition_class(const CoverSpec& c, std::span<const Elem> s_point, std::span<const Elem> a,
                             const FiniteField& k);

// Common degree of the irreducible factors of a squarefree univariate g.
std::uint32_t fiber_decomposition_order(const Poly& g, const FiniteField& k);

// Number of points of Y/H for a Kummer or trivial cover at a base point:
// pairs (a, v) with a on the stratum and v^(n/|H|) = f(a). H is given by its
// order (a divisor of n).
Integer kummer_quotient_count(const CoverSpec& c, std::uint32_t h_order, std::span<const Elem> s_point,
                              const FiniteField& k);

// Number of points of Y/H from the permutation character: the sum over
// stratum points a of #{xH : Frob_a fixes xH}. Works for every cover kind.
Integer quotient_count(const CoverSpec& c, const Subgroup& h, std::span<const Elem> s_point, const FiniteField& k);

}  // namespace pfs
