#include "pfs/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "pfs/errors.hpp"

namespace pfs {

FiniteGroup FiniteGroup::build(std::vector<std::vector<GElem>> table,
                               std::optional<std::vector<std::vector<std::uint32_t>>> perms) {
  const std::size_t n = table.size();
  if (n == 0) fail(ErrorKind::InvalidGroup, "group must have at least one element");
  if (n > kMaxGroupOrder) fail(ErrorKind::CapExceeded, "group order exceeds " + std::to_string(kMaxGroupOrder));
  for (const auto& row : table) {
    if (row.size() != n) fail(ErrorKind::InvalidGroup, "Cayley table is not square");
    for (auto v : row)
      if (v >= n) fail(ErrorKind::InvalidGroup, "Cayley table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) fail(ErrorKind::InvalidGroup, "element 0 is not the identity");
  auto impl = std::make_shared<Impl>();
  impl->inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t found = 0, inv = 0;
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == 0) {
        ++found;
        inv = b;
      }
    if (found != 1 || table[inv][a] != 0) fail(ErrorKind::InvalidGroup, "element " + std::to_string(a) + " has no inverse");
    impl->inverse[a] = static_cast<GElem>(inv);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          fail(ErrorKind::InvalidGroup, "multiplication is not associative");
  impl->table = std::move(table);
  impl->perms = std::move(perms);

  FiniteGroup g(impl);
  std::set<Subgroup> cyc;
  for (GElem a = 0; a < n; ++a) cyc.insert(g.cyclic_subgroup(a));
  impl->cyclic.assign(cyc.begin(), cyc.end());
  return g;
}

FiniteGroup FiniteGroup::from_cayley(std::vector<std::vector<GElem>> table) { return build(std::move(table), std::nullopt); }

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<std::uint32_t>>& gens) {
  std::size_t d = 0;
  for (const auto& p : gens) d = std::max(d, p.size());
  using Perm = std::vector<std::uint32_t>;
  auto pad = [&](Perm p) {
    for (std::uint32_t i = static_cast<std::uint32_t>(p.size()); i < d; ++i) p.push_back(i);
    std::vector<bool> seen(d, false);
    for (auto v : p) {
      if (v >= d || seen[v]) fail(ErrorKind::InvalidGroup, "generator is not a permutation");
      seen[v] = true;
    }
    return p;
  };
  Perm id(d);
  for (std::uint32_t i = 0; i < d; ++i) id[i] = i;
  // (p*q)(i) = p(q(i)): apply q first.
  auto compose = [](const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  std::set<Perm> elems{id};
  std::deque<Perm> todo{id};
  std::vector<Perm> padded;
  for (const auto& g : gens) padded.push_back(pad(g));
  while (!todo.empty()) {
    Perm cur = todo.front();
    todo.pop_front();
    for (const auto& g : padded) {
      Perm nxt = compose(cur, g);
      if (elems.insert(nxt).second) {
        if (elems.size() > kMaxGroupOrder) fail(ErrorKind::CapExceeded, "generated group exceeds order cap");
        todo.push_back(nxt);
      }
    }
  }
  std::vector<Perm> list(elems.begin(), elems.end());
  std::map<Perm, GElem> index;
  for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<GElem>(i);
  std::vector<std::vector<GElem>> table(list.size(), std::vector<GElem>(list.size()));
  for (std::size_t a = 0; a < list.size(); ++a)
    for (std::size_t b = 0; b < list.size(); ++b) table[a][b] = index.at(compose(list[a], list[b]));
  return build(std::move(table), list);
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) fail(ErrorKind::InvalidGroup, "cyclic group of order 0");
  std::vector<std::vector<GElem>> t(n, std::vector<GElem>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_cayley(std::move(t));
}

FiniteGroup FiniteGroup::symmetric(std::uint32_t d) {
  std::vector<std::vector<std::uint32_t>> gens;
  if (d >= 2) {
    std::vector<std::uint32_t> swap(d), cycle(d);
    for (std::uint32_t i = 0; i < d; ++i) {
      swap[i] = i;
      cycle[i] = (i + 1) % d;
    }
    std::swap(swap[0], swap[1]);
    gens = {swap, cycle};
  } else {
    gens = {{0}};
  }
  return from_permutations(gens);
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const auto n = g.order(), m = h.order();
  std::vector<std::vector<GElem>> t(n * m, std::vector<GElem>(n * m));
  for (std::size_t a = 0; a < n * m; ++a)
    for (std::size_t b = 0; b < n * m; ++b)
      t[a][b] = static_cast<GElem>(g.mul(static_cast<GElem>(a / m), static_cast<GElem>(b / m)) * m +
                                   h.mul(static_cast<GElem>(a % m), static_cast<GElem>(b % m)));
  return from_cayley(std::move(t));
}

GElem FiniteGroup::pow(GElem a, std::int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  GElem r = 0;
  for (; k; k >>= 1, a = mul(a, a))
    if (k & 1) r = mul(r, a);
  return r;
}

std::uint32_t FiniteGroup::element_order(GElem a) const {
  std::uint32_t k = 1;
  for (GElem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

Subgroup FiniteGroup::cyclic_subgroup(GElem g) const {
  Subgroup h{0};
  for (GElem x = g; x != 0; x = mul(x, g)) h.push_back(x);
  std::sort(h.begin(), h.end());
  return h;
}

Subgroup FiniteGroup::conjugate(const Subgroup& h, GElem x) const {
  Subgroup out;
  out.reserve(h.size());
  for (auto g : h) out.push_back(conj(g, x));
  std::sort(out.begin(), out.end());
  return out;
}

Subgroup FiniteGroup::canonical(const Subgroup& h) const {
  Subgroup best = h;
  for (GElem x = 0; x < order(); ++x) best = std::min(best, conjugate(h, x));
  return best;
}

bool FiniteGroup::is_subgroup(const Subgroup& h) const {
  if (h.empty() || !std::is_sorted(h.begin(), h.end()) || std::adjacent_find(h.begin(), h.end()) != h.end())
    return false;
  if (h.back() >= order() || h.front() != 0) return false;
  for (auto a : h)
    for (auto b : h)
      if (!std::binary_search(h.begin(), h.end(), mul(a, b))) return false;
  return true;
}

std::optional<GElem> FiniteGroup::cyclic_generator(const Subgroup& h) const {
  for (auto g : h)
    if (element_order(g) == h.size()) return g;
  return std::nullopt;
}

bool FiniteGroup::is_cyclic(const Subgroup& h) const { return is_subgroup(h) && cyclic_generator(h).has_value(); }

bool FiniteGroup::conjugate_subgroups(const Subgroup& a, const Subgroup& b) const {
  if (a.size() != b.size()) return false;
  for (GElem x = 0; x < order(); ++x)
    if (conjugate(a, x) == b) return true;
  return false;
}

std::size_t FiniteGroup::normalizer_order(const Subgroup& h) const {
  std::size_t n = 0;
  for (GElem x = 0; x < order(); ++x)
    if (conjugate(h, x) == h) ++n;
  return n;
}

std::vector<Subgroup> FiniteGroup::cyclic_subgroups_of(const Subgroup& h) const {
  std::vector<Subgroup> out;
  for (const auto& c : cyclic_subgroups())
    if (std::includes(h.begin(), h.end(), c.begin(), c.end())) out.push_back(c);
  return out;
}

std::string FiniteGroup::label(GElem g) const { return g == 0 ? "e" : std::to_string(g); }

GElem FiniteGroup::parse_label(const std::string& s) const {
  if (s == "e") return 0;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) || s.size() > 6)
    fail(ErrorKind::InvalidArgument, "bad group element label '" + s + "'");
  const auto v = std::stoul(s);
  if (v >= order()) fail(ErrorKind::InvalidArgument, "group element " + s + " out of range");
  return static_cast<GElem>(v);
}

std::vector<std::vector<Subgroup>> cyclic_subgroup_classes(const FiniteGroup& g) {
  std::vector<std::vector<Subgroup>> classes;
  std::set<Subgroup> done;
  for (const auto& h : g.cyclic_subgroups()) {
    if (done.count(h)) continue;
    std::set<Subgroup> cls;
    for (GElem x = 0; x < g.order(); ++x) cls.insert(g.conjugate(h, x));
    done.insert(cls.begin(), cls.end());
    classes.emplace_back(cls.begin(), cls.end());
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
    if (a.front().size() != b.front().size()) return a.front().size() < b.front().size();
    return a.front() < b.front();
  });
  return classes;
}

// ---------------------------------------------------------------------------

GroupHom::GroupHom(FiniteGroup source, FiniteGroup target, std::vector<GElem> map)
    : src_(std::move(source)), tgt_(std::move(target)), map_(std::move(map)) {
  if (map_.size() != src_.order()) fail(ErrorKind::NotAHomomorphism, "map has the wrong number of entries");
  for (auto v : map_)
    if (v >= tgt_.order()) fail(ErrorKind::NotAHomomorphism, "map entry outside the target group");
  for (GElem a = 0; a < src_.order(); ++a)
    for (GElem b = 0; b < src_.order(); ++b)
      if (map_[src_.mul(a, b)] != tgt_.mul(map_[a], map_[b]))
        fail(ErrorKind::NotAHomomorphism,
             "map(" + src_.label(a) + "*" + src_.label(b) + ") != map(" + src_.label(a) + ")*map(" + src_.label(b) + ")");
  std::set<GElem> img(map_.begin(), map_.end());
  injective_ = img.size() == map_.size();
  surjective_ = img.size() == tgt_.order();
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<GElem> m(g.order());
  for (GElem a = 0; a < g.order(); ++a) m[a] = a;
  return GroupHom(g, g, std::move(m));
}

GroupHom GroupHom::projection(const FiniteGroup& product, const FiniteGroup& g, const FiniteGroup& h, int which) {
  if (product.order() != g.order() * h.order()) fail(ErrorKind::GroupMismatch, "not a product of the given groups");
  std::vector<GElem> m(product.order());
  for (GElem a = 0; a < product.order(); ++a)
    m[a] = which == 0 ? static_cast<GElem>(a / h.order()) : static_cast<GElem>(a % h.order());
  return GroupHom(product, which == 0 ? g : h, std::move(m));
}

Subgroup GroupHom::image(const Subgroup& h) const {
  std::set<GElem> s;
  for (auto a : h) s.insert(map_[a]);
  return Subgroup(s.begin(), s.end());
}

Subgroup GroupHom::preimage(const Subgroup& h) const {
  Subgroup out;
  for (GElem a = 0; a < src_.order(); ++a)
    if (std::binary_search(h.begin(), h.end(), map_[a])) out.push_back(a);
  return out;
}

std::optional<GElem> GroupHom::lift(GElem b) const {
  for (GElem a = 0; a < src_.order(); ++a)
    if (map_[a] == b) return a;
  return std::nullopt;
}

GroupHom GroupHom::then(const GroupHom& next) const {
  if (!(tgt_ == next.src_)) fail(ErrorKind::GroupMismatch, "homomorphisms do not compose");
  std::vector<GElem> m(map_.size());
  for (std::size_t a = 0; a < map_.size(); ++a) m[a] = next.map_[map_[a]];
  return GroupHom(src_, next.tgt_, std::move(m));
}

// ---------------------------------------------------------------------------

std::string subgroup_to_string(const FiniteGroup& g, const Subgroup& h) {
  std::string s = "{";
  for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + g.label(h[i]);
  return s + "}";
}

ConjDomain::ConjDomain(FiniteGroup g, std::set<Subgroup> subs) : g_(std::move(g)), subs_(std::move(subs)) {
  for (const auto& h : subs_) {
    if (!g_.is_subgroup(h)) fail(ErrorKind::NotASubgroup, subgroup_to_string(g_, h) + " is not a subgroup");
    if (!g_.is_cyclic(h)) fail(ErrorKind::NotCyclic, subgroup_to_string(g_, h) + " is not cyclic");
  }
  for (const auto& h : subs_)
    for (GElem x = 0; x < g_.order(); ++x) {
      auto c = g_.conjugate(h, x);
      if (!subs_.count(c)) {
        Error err(ErrorKind::NotConjugationStable,
                  "conjugation domain contains " + subgroup_to_string(g_, h) + " but not its conjugate " +
                      subgroup_to_string(g_, c),
                  {subgroup_to_string(g_, h), subgroup_to_string(g_, c)});
        throw err;
      }
    }
}

ConjDomain ConjDomain::empty(const FiniteGroup& g) { return ConjDomain(g, {}, true); }

ConjDomain ConjDomain::all(const FiniteGroup& g) {
  return ConjDomain(g, std::set<Subgroup>(g.cyclic_subgroups().begin(), g.cyclic_subgroups().end()), true);
}

ConjDomain ConjDomain::closure(const FiniteGroup& g, const std::set<Subgroup>& subs) {
  std::set<Subgroup> out;
  for (const auto& h : subs) {
    if (!g.is_cyclic(h)) fail(ErrorKind::NotCyclic, subgroup_to_string(g, h) + " is not a cyclic subgroup");
    for (GElem x = 0; x < g.order(); ++x) out.insert(g.conjugate(h, x));
  }
  return ConjDomain(g, std::move(out), true);
}

ConjDomain ConjDomain::complement() const {
  std::set<Subgroup> out;
  for (const auto& h : g_.cyclic_subgroups())
    if (!subs_.count(h)) out.insert(h);
  return ConjDomain(g_, std::move(out), true);
}

ConjDomain ConjDomain::unite(const ConjDomain& o) const {
  if (!(g_ == o.g_)) fail(ErrorKind::GroupMismatch, "conjugation domains live in different groups");
  auto out = subs_;
  out.insert(o.subs_.begin(), o.subs_.end());
  return ConjDomain(g_, std::move(out), true);
}

ConjDomain ConjDomain::intersect(const ConjDomain& o) const {
  if (!(g_ == o.g_)) fail(ErrorKind::GroupMismatch, "conjugation domains live in different groups");
  std::set<Subgroup> out;
  for (const auto& h : subs_)
    if (o.subs_.count(h)) out.insert(h);
  return ConjDomain(g_, std::move(out), true);
}

GroupHom subgroup_embedding(const FiniteGroup& g, const Subgroup& h) {
  if (!g.is_subgroup(h)) fail(ErrorKind::NotASubgroup, subgroup_to_string(g, h) + " is not a subgroup");
  std::vector<std::vector<GElem>> t(h.size(), std::vector<GElem>(h.size()));
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b)
      t[a][b] = static_cast<GElem>(std::lower_bound(h.begin(), h.end(), g.mul(h[a], h[b])) - h.begin());
  return GroupHom(FiniteGroup::from_cayley(std::move(t)), g, h);
}

ConjDomain inflate_domain(const GroupHom& psi, const ConjDomain& con) {
  if (!(psi.target() == con.group())) fail(ErrorKind::GroupMismatch, "domain does not live in the target group");
  std::set<Subgroup> out;
  for (const auto& h : psi.source().cyclic_subgroups())
    if (con.contains(psi.image(h))) out.insert(h);
  return ConjDomain(psi.source(), std::move(out));
}

}  // namespace pfs
