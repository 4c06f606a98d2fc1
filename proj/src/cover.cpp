#include "pfs/cover.hpp"

#include <algorithm>
#include <sstream>

#include "pfs/errors.hpp"

namespace pfs {

bool Admissible::admits(std::uint32_t q, std::uint32_t p) const {
  for (const auto& [m, r] : congruences)
    if (m != 0 && q % m != r % m) return false;
  return std::find(exclude.begin(), exclude.end(), p) == exclude.end() &&
         std::find(exclude.begin(), exclude.end(), q) == exclude.end();
}

Admissible Admissible::merged(const Admissible& o) const {
  Admissible out = *this;
  for (const auto& c : o.congruences)
    if (std::find(out.congruences.begin(), out.congruences.end(), c) == out.congruences.end()) out.congruences.push_back(c);
  for (auto p : o.exclude)
    if (std::find(out.exclude.begin(), out.exclude.end(), p) == out.exclude.end()) out.exclude.push_back(p);
  std::sort(out.congruences.begin(), out.congruences.end());
  std::sort(out.exclude.begin(), out.exclude.end());
  return out;
}

std::string Admissible::describe() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, r] : congruences) {
    out << (first ? "" : ", ") << "q = " << r << " mod " << m;
    first = false;
  }
  for (auto p : exclude) {
    out << (first ? "" : ", ") << "p != " << p;
    first = false;
  }
  return first ? "any q" : out.str();
}

std::string to_string(CoverKind kind) {
  switch (kind) {
    case CoverKind::Trivial: return "trivial";
    case CoverKind::Kummer: return "kummer";
    case CoverKind::Tabulated: return "tabulated";
    case CoverKind::Product: return "product";
    case CoverKind::Restricted: return "restricted";
    case CoverKind::Pullback: return "pullback";
  }
  return "?";
}

namespace {
void require_quantifier_free(const Formula& f) {
  if (!f.is_quantifier_free()) fail(ErrorKind::InvalidArgument, "cover strata must be quantifier-free");
}
}  // namespace

CoverSpec CoverSpec::trivial(Formula stratum, Admissible adm) {
  require_quantifier_free(stratum);
  CoverSpec c(CoverKind::Trivial, FiniteGroup::trivial(), std::move(stratum));
  c.adm_ = std::move(adm);
  return c;
}

CoverSpec CoverSpec::kummer(std::uint32_t n, Poly f, Formula stratum, Admissible adm) {
  require_quantifier_free(stratum);
  if (n == 0) fail(ErrorKind::InvalidArgument, "Kummer degree must be positive");
  auto nonzero = stratum.with_body(node::neq(f, Poly()));
  CoverSpec c(CoverKind::Kummer, FiniteGroup::cyclic(n), stratum.conjoin(nonzero));
  c.n_ = n;
  c.f_ = std::move(f);
  c.adm_ = std::move(adm);
  return c;
}

CoverSpec CoverSpec::tabulated(FiniteGroup g, Formula stratum, std::map<TabKey, GElem> table,
                               std::optional<GElem> default_frob, Admissible adm) {
  require_quantifier_free(stratum);
  for (const auto& [key, v] : table)
    if (v >= g.order()) fail(ErrorKind::InvalidArgument, "tabulated Frobenius outside the group");
  if (default_frob && *default_frob >= g.order()) fail(ErrorKind::InvalidArgument, "default Frobenius outside the group");
  CoverSpec c(CoverKind::Tabulated, std::move(g), std::move(stratum));
  c.table_ = std::move(table);
  c.default_frob_ = default_frob;
  c.adm_ = std::move(adm);
  return c;
}

CoverSpec CoverSpec::product(const CoverSpec& a, const CoverSpec& b, std::optional<ProductWitness> witness) {
  const auto& fa = a.stratum();
  const auto& fb = b.stratum();
  if (fa.params() != fb.params()) fail(ErrorKind::VariableMismatch, "product factors have different base parameters");
  for (const auto& v : fa.free_vars())
    if (std::find(fb.free_vars().begin(), fb.free_vars().end(), v) != fb.free_vars().end())
      fail(ErrorKind::VariableMismatch, "product factors share the coordinate '" + v + "'");
  auto vars = fa.free_vars();
  vars.insert(vars.end(), fb.free_vars().begin(), fb.free_vars().end());
  Formula stratum(fa.params(), vars, node::conj({fa.body(), fb.body()}));

  FiniteGroup g = FiniteGroup::direct_product(a.group(), b.group());
  if (witness) {
    const auto& w = *witness;
    if (!(w.p1.source() == w.v) || !(w.p2.source() == w.v) || !(w.p1.target() == a.group()) ||
        !(w.p2.target() == b.group()))
      fail(ErrorKind::WitnessInvalid, "witness maps do not connect V to the factor groups");
    if (!w.p1.surjective() || !w.p2.surjective())
      fail(ErrorKind::WitnessInvalid, "witness maps must be surjective onto both factor groups");
    std::set<std::pair<GElem, GElem>> pairs;
    for (GElem x = 0; x < w.v.order(); ++x) pairs.insert({w.p1(x), w.p2(x)});
    if (pairs.size() != w.v.order()) fail(ErrorKind::WitnessInvalid, "witness maps are not jointly injective");
    g = w.v;
  } else {
    witness = ProductWitness{g, GroupHom::projection(g, a.group(), b.group(), 0),
                             GroupHom::projection(g, a.group(), b.group(), 1)};
  }
  CoverSpec c(CoverKind::Product, g, std::move(stratum));
  c.left_ = std::make_shared<const CoverSpec>(a);
  c.right_ = std::make_shared<const CoverSpec>(b);
  c.witness_ = std::move(witness);
  c.adm_ = a.adm_.merged(b.adm_);
  return c;
}

CoverSpec CoverSpec::restricted(const CoverSpec& parent, GroupHom embedding, Formula stratum) {
  require_quantifier_free(stratum);
  if (!(embedding.target() == parent.group())) fail(ErrorKind::GroupMismatch, "embedding must land in the parent group");
  if (!embedding.injective()) fail(ErrorKind::NotInjective, "decomposition subgroup must embed");
  if (stratum.params() != parent.stratum().params() || stratum.free_vars() != parent.stratum().free_vars())
    fail(ErrorKind::VariableMismatch, "sub-stratum must use the parent's coordinates");
  CoverSpec c(CoverKind::Restricted, embedding.source(), stratum.conjoin(parent.stratum()));
  c.inner_ = std::make_shared<const CoverSpec>(parent);
  c.embedding_ = std::move(embedding);
  c.adm_ = parent.adm_;
  return c;
}

CoverSpec CoverSpec::pullback(const CoverSpec& inner, const std::map<std::string, Poly>& var_map,
                              std::vector<std::string> new_vars) {
  const auto& params = inner.stratum().params();
  std::vector<Poly> pre;
  for (const auto& v : inner.stratum().free_vars()) {
    auto it = var_map.find(v);
    if (it == var_map.end()) fail(ErrorKind::MissingVariable, "substitution does not define '" + v + "'");
    pre.push_back(it->second);
  }
  Formula stratum = inner.stratum().substitute(var_map, params, new_vars);
  if (inner.kind_ == CoverKind::Trivial) {
    CoverSpec c = inner;
    c.stratum_ = std::move(stratum);
    return c;
  }
  if (inner.kind_ == CoverKind::Kummer) {
    CoverSpec c = inner;
    c.stratum_ = std::move(stratum);
    c.f_ = inner.f_.substitute(var_map);
    return c;
  }
  CoverSpec c(CoverKind::Pullback, inner.group(), std::move(stratum));
  c.inner_ = std::make_shared<const CoverSpec>(inner);
  c.pre_map_ = std::move(pre);
  c.adm_ = inner.adm_;
  return c;
}

CoverSpec CoverSpec::base_change(const CoverSpec& c, const std::map<std::string, Poly>& values,
                                 std::vector<std::string> new_params) {
  const auto& vars = c.stratum().free_vars();
  switch (c.kind_) {
    case CoverKind::Trivial:
    case CoverKind::Kummer: {
      CoverSpec out = c;
      out.stratum_ = c.stratum_.substitute(values, new_params, vars);
      out.f_ = c.f_.substitute(values);
      return out;
    }
    case CoverKind::Product: {
      auto a = base_change(*c.left_, values, new_params);
      auto b = base_change(*c.right_, values, new_params);
      return product(a, b, c.witness_);
    }
    default:
      fail(ErrorKind::InvalidArgument, "base change is not supported for " + to_string(c.kind_) + " covers");
  }
}

bool CoverSpec::same_cover(const CoverSpec& o) const {
  if (kind_ != o.kind_ || !(group_ == o.group_) || !(stratum_ == o.stratum_)) return false;
  if (n_ != o.n_ || !(f_ == o.f_) || table_ != o.table_ || default_frob_ != o.default_frob_) return false;
  auto same_ptr = [](const std::shared_ptr<const CoverSpec>& a, const std::shared_ptr<const CoverSpec>& b) {
    if (!a || !b) return !a && !b;
    return a->same_cover(*b);
  };
  if (!same_ptr(left_, o.left_) || !same_ptr(right_, o.right_) || !same_ptr(inner_, o.inner_)) return false;
  if (embedding_.has_value() != o.embedding_.has_value()) return false;
  if (embedding_ && embedding_->map() != o.embedding_->map()) return false;
  if (pre_map_.size() != o.pre_map_.size()) return false;
  for (std::size_t i = 0; i < pre_map_.size(); ++i)
    if (!(pre_map_[i] == o.pre_map_[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------

struct BoundCover::Impl {
  const CoverSpec* spec;
  FiniteField k;
  FormulaEvaluator stratum;
  CompiledPoly f;
  std::unique_ptr<BoundCover> left, right, inner;
  std::size_t left_width = 0;
  std::map<std::pair<GElem, GElem>, GElem> pair_to_v;
  std::vector<std::optional<GElem>> restrict_to;  // parent element -> element of the subgroup
  std::vector<CompiledPoly> pre;

  Impl(const CoverSpec& c, const FiniteField& field) : spec(&c), k(field), stratum(c.stratum(), field) {}

  std::map<std::string, std::size_t> slots() const {
    std::map<std::string, std::size_t> s;
    std::size_t i = 0;
    for (const auto& v : spec->stratum().params()) s[v] = i++;
    for (const auto& v : spec->stratum().free_vars()) s[v] = i++;
    return s;
  }
};

BoundCover::BoundCover(const CoverSpec& c, const FiniteField& k) : impl_(std::make_unique<Impl>(c, k)) {
  if (!c.admissible().admits(k))
    fail(ErrorKind::InadmissiblePrime, k.name() + " is not admissible (" + c.admissible().describe() + ")");
  auto& I = *impl_;
  switch (c.kind()) {
    case CoverKind::Trivial:
    case CoverKind::Tabulated:
      break;
    case CoverKind::Kummer:
      if ((k.q() - 1) % c.kummer_degree() != 0)
        fail(ErrorKind::InadmissiblePrime, "Kummer degree " + std::to_string(c.kummer_degree()) + " does not divide " +
                                               std::to_string(k.q() - 1));
      I.f = CompiledPoly(c.kummer_poly(), I.slots(), k);
      break;
    case CoverKind::Product: {
      I.left = std::make_unique<BoundCover>(*c.left(), k);
      I.right = std::make_unique<BoundCover>(*c.right(), k);
      I.left_width = c.left()->stratum().free_vars().size();
      const auto& w = *c.witness();
      for (GElem v = 0; v < w.v.order(); ++v) I.pair_to_v[{w.p1(v), w.p2(v)}] = v;
      break;
    }
    case CoverKind::Restricted: {
      I.inner = std::make_unique<BoundCover>(*c.inner(), k);
      const auto& emb = *c.embedding();
      const auto& G = emb.target();
      I.restrict_to.assign(G.order(), std::nullopt);
      for (GElem g = 0; g < G.order(); ++g)
        for (GElem x = 0; x < G.order() && !I.restrict_to[g]; ++x)
          I.restrict_to[g] = emb.lift(G.conj(g, x));
      break;
    }
    case CoverKind::Pullback: {
      I.inner = std::make_unique<BoundCover>(*c.inner(), k);
      for (const auto& p : c.pre_map()) I.pre.emplace_back(p, I.slots(), k);
      break;
    }
  }
}

BoundCover::~BoundCover() = default;
BoundCover::BoundCover(BoundCover&&) noexcept = default;

bool BoundCover::on_stratum(std::span<const Elem> s_point, std::span<const Elem> a) const {
  return impl_->stratum.holds(s_point, a);
}

GElem BoundCover::frobenius(std::span<const Elem> s_point, std::span<const Elem> a) const {
  const auto& I = *impl_;
  const auto& c = *I.spec;
  switch (c.kind()) {
    case CoverKind::Trivial:
      return 0;
    case CoverKind::Kummer: {
      std::vector<Elem> slots(s_point.begin(), s_point.end());
      slots.insert(slots.end(), a.begin(), a.end());
      const Elem v = I.f.eval(slots, I.k);
      if (v == 0) fail(ErrorKind::PointOffStratum, "Kummer function vanishes at the point");
      return power_residue(v, c.kummer_degree(), I.k);
    }
    case CoverKind::Tabulated: {
      TabKey key{I.k.q(), {s_point.begin(), s_point.end()}, {a.begin(), a.end()}};
      auto it = c.table().find(key);
      if (it != c.table().end()) return it->second;
      if (c.default_frob()) return *c.default_frob();
      fail(ErrorKind::MissingDatum, "no tabulated Frobenius at this point of " + I.k.name());
    }
    case CoverKind::Product: {
      const GElem g1 = I.left->frobenius(s_point, a.subspan(0, I.left_width));
      const GElem g2 = I.right->frobenius(s_point, a.subspan(I.left_width));
      auto it = I.pair_to_v.find({g1, g2});
      if (it == I.pair_to_v.end())
        fail(ErrorKind::WitnessInvalid, "Frobenius pair is not in the witness group");
      return it->second;
    }
    case CoverKind::Restricted: {
      const GElem g = I.inner->frobenius(s_point, a);
      if (!I.restrict_to[g])
        fail(ErrorKind::SemanticMismatch, "Frobenius is not conjugate into the declared decomposition subgroup");
      return *I.restrict_to[g];
    }
    case CoverKind::Pullback: {
      std::vector<Elem> slots(s_point.begin(), s_point.end());
      slots.insert(slots.end(), a.begin(), a.end());
      std::vector<Elem> image;
      for (const auto& p : I.pre) image.push_back(p.eval(slots, I.k));
      return I.inner->frobenius(s_point, image);
    }
  }
  return 0;
}

Subgroup decomposition_class(const CoverSpec& c, std::span<const Elem> s_point, std::span<const Elem> a,
                             const FiniteField& k) {
  BoundCover b(c, k);
  if (!b.on_stratum(s_point, a)) fail(ErrorKind::PointOffStratum, "point is not on the cover's stratum");
  const auto& g = c.group();
  return g.canonical(g.cyclic_subgroup(b.frobenius(s_point, a)));
}

std::uint32_t fiber_decomposition_order(const Poly& g, const FiniteField& k) {
  auto degrees = distinct_degree_profile(g, k);
  if (degrees.empty()) fail(ErrorKind::InvalidArgument, "fiber polynomial must have positive degree");
  for (auto d : degrees)
    if (d != degrees.front()) {
      std::string list;
      for (auto e : degrees) list += (list.empty() ? "" : ",") + std::to_string(e);
      fail(ErrorKind::UnequalDegrees, "irreducible factors have degrees {" + list + "}");
    }
  return degrees.front();
}

Integer kummer_quotient_count(const CoverSpec& c, std::uint32_t h_order, std::span<const Elem> s_point,
                              const FiniteField& k) {
  std::uint32_t n = 1;
  if (c.kind() == CoverKind::Kummer)
    n = c.kummer_degree();
  else if (c.kind() != CoverKind::Trivial)
    fail(ErrorKind::InvalidArgument, "equation count needs a Kummer or trivial cover");
  if (h_order == 0 || n % h_order != 0) fail(ErrorKind::NotASubgroup, "subgroup order must divide the Kummer degree");
  const std::uint32_t d = n / h_order;
  std::vector<Integer> roots(k.q(), 0);
  for (Elem v = 0; v < k.q(); ++v) roots[k.pow(v, d)] += 1;

  FormulaEvaluator stratum(c.stratum(), k);
  std::map<std::string, std::size_t> slots;
  std::size_t i = 0;
  for (const auto& v : c.stratum().params()) slots[v] = i++;
  for (const auto& v : c.stratum().free_vars()) slots[v] = i++;
  CompiledPoly f(c.kind() == CoverKind::Kummer ? c.kummer_poly() : Poly::constant(1), slots, k);
  Integer total = 0;
  for (const auto& a : all_points(k, c.stratum().free_vars().size())) {
    if (!stratum.holds(s_point, a)) continue;
    std::vector<Elem> vals(s_point.begin(), s_point.end());
    vals.insert(vals.end(), a.begin(), a.end());
    total += roots[f.eval(vals, k)];
  }
  return total;
}

Integer quotient_count(const CoverSpec& c, const Subgroup& h, std::span<const Elem> s_point, const FiniteField& k) {
  const auto& g = c.group();
  if (!g.is_subgroup(h)) fail(ErrorKind::NotASubgroup, subgroup_to_string(g, h) + " is not a subgroup");
  // fixed cosets of Frob = #{x : x^-1 f x in H} / |H|
  std::vector<long> fixed(g.order(), 0);
  for (GElem f = 0; f < g.order(); ++f) {
    long cnt = 0;
    for (GElem x = 0; x < g.order(); ++x)
      if (std::binary_search(h.begin(), h.end(), g.mul(g.mul(g.inv(x), f), x))) ++cnt;
    fixed[f] = cnt / static_cast<long>(h.size());
  }
  BoundCover b(c, k);
  Integer total = 0;
  for (const auto& a : all_points(k, c.stratum().free_vars().size()))
    if (b.on_stratum(s_point, a)) total += fixed[b.frobenius(s_point, a)];
  return total;
}

}  // namespace pfs
