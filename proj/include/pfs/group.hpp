#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pfs {

using GElem = std::uint32_t;
// A subgroup as its sorted element list.
using Subgroup = std::vector<GElem>;

inline constexpr std::size_t kMaxGroupOrder = 512;

// Finite group given by its Cayley table; element 0 is the identity.
// Construction verifies the group axioms exhaustively.
class FiniteGroup {
 public:
  static FiniteGroup from_cayley(std::vector<std::vector<GElem>> table);
  // Closure of one-line permutations of {0..d-1}; elements are sorted
  // lexicographically by one-line notation, so the identity comes first.
  static FiniteGroup from_permutations(const std::vector<std::vector<std::uint32_t>>& gens);
  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::uint32_t n);
  static FiniteGroup symmetric(std::uint32_t d);
  // Pairs (a, b) are encoded as a * |H| + b.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

  std::size_t order() const { return impl_->table.size(); }
  GElem identity() const { return 0; }
  GElem mul(GElem a, GElem b) const { return impl_->table[a][b]; }
  GElem inv(GElem a) const { return impl_->inverse[a]; }
  GElem pow(GElem a, std::int64_t k) const;
  GElem conj(GElem g, GElem x) const { return mul(mul(x, g), inv(x)); }  // x g x^-1
  std::uint32_t element_order(GElem a) const;
  const std::vector<std::vector<GElem>>& table() const { return impl_->table; }
  const std::optional<std::vector<std::vector<std::uint32_t>>>& permutations() const { return impl_->perms; }

  Subgroup cyclic_subgroup(GElem g) const;
  Subgroup conjugate(const Subgroup& h, GElem x) const;
  // Lexicographically least conjugate.
  Subgroup canonical(const Subgroup& h) const;
  bool is_subgroup(const Subgroup& h) const;
  bool is_cyclic(const Subgroup& h) const;
  std::optional<GElem> cyclic_generator(const Subgroup& h) const;
  bool conjugate_subgroups(const Subgroup& a, const Subgroup& b) const;
  std::size_t normalizer_order(const Subgroup& h) const;

  // Every cyclic subgroup, sorted.
  const std::vector<Subgroup>& cyclic_subgroups() const { return impl_->cyclic; }
  // Subgroups of the cyclic subgroups list contained in h.
  std::vector<Subgroup> cyclic_subgroups_of(const Subgroup& h) const;

  // "e" for the identity, the decimal index otherwise.
  std::string label(GElem g) const;
  GElem parse_label(const std::string& s) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.impl_ == b.impl_ || a.impl_->table == b.impl_->table;
  }

 private:
  struct Impl {
    std::vector<std::vector<GElem>> table;
    std::vector<GElem> inverse;
    std::optional<std::vector<std::vector<std::uint32_t>>> perms;
    std::vector<Subgroup> cyclic;
  };
  explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static FiniteGroup build(std::vector<std::vector<GElem>> table,
                           std::optional<std::vector<std::vector<std::uint32_t>>> perms);
  std::shared_ptr<const Impl> impl_;
};

// Sorted, unique conjugacy classes of cyclic subgroups; each class is sorted,
// so its first member is the canonical representative. Classes are ordered
// by (subgroup order, representative).
std::vector<std::vector<Subgroup>> cyclic_subgroup_classes(const FiniteGroup& g);

class GroupHom {
 public:
  // Verifies map(a*b) = map(a)*map(b) exhaustively (NotAHomomorphism).
  GroupHom(FiniteGroup source, FiniteGroup target, std::vector<GElem> map);
  static GroupHom identity(const FiniteGroup& g);
  // Projections out of a direct product built by FiniteGroup::direct_product.
  static GroupHom projection(const FiniteGroup& product, const FiniteGroup& g, const FiniteGroup& h, int which);

  const FiniteGroup& source() const { return src_; }
  const FiniteGroup& target() const { return tgt_; }
  const std::vector<GElem>& map() const { return map_; }
  GElem operator()(GElem a) const { return map_[a]; }
  bool injective() const { return injective_; }
  bool surjective() const { return surjective_; }
  Subgroup image(const Subgroup& h) const;
  Subgroup preimage(const Subgroup& h) const;
  // Element with the given image, if any (least such).
  std::optional<GElem> lift(GElem b) const;
  GroupHom then(const GroupHom& next) const;

 private:
  FiniteGroup src_, tgt_;
  std::vector<GElem> map_;
  bool injective_ = false, surjective_ = false;
};

// A conjugation-stable set of cyclic subgroups.
class ConjDomain {
 public:
  // Validates: members are cyclic subgroups (NotASubgroup / NotCyclic) and
  // the set is conjugation-stable (NotConjugationStable, naming the first
  // missing conjugate).
  ConjDomain(FiniteGroup g, std::set<Subgroup> subs);
  static ConjDomain empty(const FiniteGroup& g);
  static ConjDomain all(const FiniteGroup& g);
  // Smallest conjugation domain containing the given cyclic subgroups.
  static ConjDomain closure(const FiniteGroup& g, const std::set<Subgroup>& subs);

  const FiniteGroup& group() const { return g_; }
  const std::set<Subgroup>& subs() const { return subs_; }
  bool contains(const Subgroup& h) const { return subs_.count(h) > 0; }
  bool empty_domain() const { return subs_.empty(); }

  ConjDomain complement() const;
  ConjDomain unite(const ConjDomain& o) const;
  ConjDomain intersect(const ConjDomain& o) const;

  friend bool operator==(const ConjDomain& a, const ConjDomain& b) { return a.g_ == b.g_ && a.subs_ == b.subs_; }

 private:
  ConjDomain(FiniteGroup g, std::set<Subgroup> subs, bool) : g_(std::move(g)), subs_(std::move(subs)) {}
  FiniteGroup g_;
  std::set<Subgroup> subs_;
};

// The subgroup h as a group in its own right (elements in sorted order of h)
// together with its inclusion into g.
GroupHom subgroup_embedding(const FiniteGroup& g, const Subgroup& h);

// Con' = cyclic subgroups of psi's source whose image lies in con.
ConjDomain inflate_domain(const GroupHom& psi, const ConjDomain& con);

std::string subgroup_to_string(const FiniteGroup& g, const Subgroup& h);

}  // namespace pfs
