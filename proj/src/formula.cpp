#include "pfs/formula.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "pfs/errors.hpp"

namespace pfs {

// ---------------------------------------------------------------------------
// Node construction

namespace node {

namespace {
NodePtr make(NodeKind kind, std::vector<NodePtr> kids = {}, std::string var = {}) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->kids = std::move(kids);
  n->var = std::move(var);
  return n;
}
}  // namespace

NodePtr eq(Poly lhs, Poly rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::Eq;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr neq(Poly lhs, Poly rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = NodeKind::Neq;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr conj(std::vector<NodePtr> kids) {
  if (kids.empty()) return truth();
  if (kids.size() == 1) return kids.front();
  return make(NodeKind::And, std::move(kids));
}

NodePtr disj(std::vector<NodePtr> kids) {
  if (kids.empty()) return negate(truth());
  if (kids.size() == 1) return kids.front();
  return make(NodeKind::Or, std::move(kids));
}

NodePtr negate(NodePtr kid) { return make(NodeKind::Not, {std::move(kid)}); }
NodePtr implies(NodePtr lhs, NodePtr rhs) { return make(NodeKind::Implies, {std::move(lhs), std::move(rhs)}); }
NodePtr exists(std::string var, NodePtr body) { return make(NodeKind::Exists, {std::move(body)}, std::move(var)); }
NodePtr forall(std::string var, NodePtr body) { return make(NodeKind::Forall, {std::move(body)}, std::move(var)); }
NodePtr truth() { return eq(Poly(), Poly()); }

}  // namespace node

namespace {

bool is_atom(NodeKind k) { return k == NodeKind::Eq || k == NodeKind::Neq; }
bool is_quantifier(NodeKind k) { return k == NodeKind::Exists || k == NodeKind::Forall; }

void collect_names(const NodePtr& n, std::set<std::string>& out) {
  if (is_atom(n->kind)) {
    for (const auto& v : n->lhs.variables()) out.insert(v);
    for (const auto& v : n->rhs.variables()) out.insert(v);
    return;
  }
  if (!n->var.empty()) out.insert(n->var);
  for (const auto& k : n->kids) collect_names(k, out);
}

// Free variables in order of first occurrence (left to right).
void collect_free(const NodePtr& n, std::vector<std::string>& bound, std::vector<std::string>& out) {
  if (is_atom(n->kind)) {
    for (const Poly* p : {&n->lhs, &n->rhs})
      for (const auto& v : p->used_variables())
        if (std::find(bound.begin(), bound.end(), v) == bound.end() &&
            std::find(out.begin(), out.end(), v) == out.end())
          out.push_back(v);
    return;
  }
  if (is_quantifier(n->kind)) {
    bound.push_back(n->var);
    collect_free(n->kids[0], bound, out);
    bound.pop_back();
    return;
  }
  for (const auto& k : n->kids) collect_free(k, bound, out);
}

class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken) : taken_(std::move(taken)) {}
  void reserve(const std::string& s) { taken_.insert(s); }
  std::string next() {
    for (;;) {
      std::string s = "v_" + std::to_string(++counter_);
      if (taken_.insert(s).second) return s;
    }
  }

 private:
  std::set<std::string> taken_;
  std::size_t counter_ = 0;
};

std::size_t depth_of(const NodePtr& n) {
  std::size_t d = 0;
  for (const auto& k : n->kids) d = std::max(d, depth_of(k));
  return d + (is_quantifier(n->kind) ? 1 : 0);
}

}  // namespace

bool structurally_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind || a->var != b->var || a->kids.size() != b->kids.size()) return false;
  if (is_atom(a->kind)) return a->lhs == b->lhs && a->rhs == b->rhs;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formula

Formula::Formula(std::vector<std::string> params, std::vector<std::string> free_vars, NodePtr body)
    : params_(std::move(params)), free_(std::move(free_vars)), body_(std::move(body)) {
  std::vector<std::string> bound, free;
  collect_free(body_, bound, free);
  for (const auto& v : free) {
    if (std::find(params_.begin(), params_.end(), v) != params_.end()) continue;
    if (std::find(free_.begin(), free_.end(), v) != free_.end()) continue;
    fail(ErrorKind::VariableMismatch, "variable '" + v + "' is neither a parameter, free, nor bound");
  }
  std::set<std::string> seen;
  for (const auto& v : params_)
    if (!seen.insert(v).second) fail(ErrorKind::VariableMismatch, "duplicate variable '" + v + "'");
  for (const auto& v : free_)
    if (!seen.insert(v).second) fail(ErrorKind::VariableMismatch, "duplicate variable '" + v + "'");
}

std::size_t Formula::quantifier_depth() const { return depth_of(body_); }
bool Formula::is_quantifier_free() const { return depth_of(body_) == 0; }
std::string Formula::to_string() const { return pfs::to_string(body_); }

Formula Formula::substitute(const std::map<std::string, Poly>& values, std::vector<std::string> params,
                            std::vector<std::string> free_vars) const {
  std::set<std::string> taken;
  collect_names(body_, taken);
  std::set<std::string> outer(params.begin(), params.end());
  outer.insert(free_vars.begin(), free_vars.end());
  for (const auto& [name, p] : values)
    for (const auto& v : p.variables()) outer.insert(v);
  taken.insert(outer.begin(), outer.end());
  FreshNames fresh(taken);

  std::function<NodePtr(const NodePtr&, const std::map<std::string, Poly>&)> go =
      [&](const NodePtr& n, const std::map<std::string, Poly>& m) -> NodePtr {
    if (is_atom(n->kind)) {
      auto l = n->lhs.substitute(m), r = n->rhs.substitute(m);
      return n->kind == NodeKind::Eq ? node::eq(l, r) : node::neq(l, r);
    }
    if (is_quantifier(n->kind)) {
      std::string v = outer.count(n->var) ? fresh.next() : n->var;
      auto inner = m;
      if (v != n->var)
        inner[n->var] = Poly::variable(v);
      else
        inner.erase(n->var);
      auto body = go(n->kids[0], inner);
      return n->kind == NodeKind::Exists ? node::exists(v, body) : node::forall(v, body);
    }
    std::vector<NodePtr> kids;
    for (const auto& k : n->kids) kids.push_back(go(k, m));
    switch (n->kind) {
      case NodeKind::And: return std::make_shared<FormulaNode>(FormulaNode{NodeKind::And, {}, {}, {}, kids});
      case NodeKind::Or: return std::make_shared<FormulaNode>(FormulaNode{NodeKind::Or, {}, {}, {}, kids});
      case NodeKind::Not: return node::negate(kids[0]);
      default: return node::implies(kids[0], kids[1]);
    }
  };
  return Formula(std::move(params), std::move(free_vars), go(body_, values));
}

Formula Formula::conjoin(const Formula& other) const {
  if (params_ != other.params_) fail(ErrorKind::VariableMismatch, "conjoined formulas have different parameters");
  auto free = free_;
  for (const auto& v : other.free_)
    if (std::find(free.begin(), free.end(), v) == free.end()) free.push_back(v);
  return Formula(params_, std::move(free), node::conj({body_, other.body_}));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Implies: return 1;
    case NodeKind::Or: return 2;
    case NodeKind::And: return 3;
    default: return 4;  // atoms, negation, quantifiers
  }
}

std::string print(const NodePtr& n);

std::string print_kid(const NodePtr& kid, int parent_prec, bool paren_equal) {
  const int p = precedence(kid->kind);
  if (p < parent_prec || (p == parent_prec && paren_equal)) return "(" + print(kid) + ")";
  return print(kid);
}

std::string print(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Eq: return n->lhs.to_string() + " = " + n->rhs.to_string();
    case NodeKind::Neq: return n->lhs.to_string() + " != " + n->rhs.to_string();
    case NodeKind::Not: {
      const auto& k = n->kids[0];
      if (k->kind == NodeKind::Not || is_quantifier(k->kind)) return "~" + print(k);
      return "~(" + print(k) + ")";
    }
    case NodeKind::And:
    case NodeKind::Or: {
      std::string out;
      const char* sep = n->kind == NodeKind::And ? " & " : " | ";
      for (std::size_t i = 0; i < n->kids.size(); ++i) {
        if (i) out += sep;
        out += print_kid(n->kids[i], precedence(n->kind), true);
      }
      return out;
    }
    case NodeKind::Implies:
      return print_kid(n->kids[0], 1, true) + " -> " + print_kid(n->kids[1], 1, false);
    case NodeKind::Exists: return "E " + n->var + " (" + print(n->kids[0]) + ")";
    case NodeKind::Forall: return "A " + n->var + " (" + print(n->kids[0]) + ")";
  }
  return {};
}

}  // namespace

std::string to_string(const NodePtr& n) { return print(n); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    auto n = implication();
    space();
    if (pos_ != text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    Error err(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_));
    err.position = pos_;
    throw err;
  }
  void space() { detail::skip_space(text_, pos_); }
  bool at(std::string_view tok) {
    space();
    return text_.substr(pos_, tok.size()) == tok;
  }

  NodePtr implication() {
    auto lhs = disjunction();
    if (at("->")) {
      pos_ += 2;
      return node::implies(lhs, implication());
    }
    return lhs;
  }

  NodePtr disjunction() {
    std::vector<NodePtr> kids{conjunction()};
    while (at("|")) {
      ++pos_;
      kids.push_back(conjunction());
    }
    return kids.size() == 1 ? kids[0] : node::disj(std::move(kids));
  }

  NodePtr conjunction() {
    std::vector<NodePtr> kids{unary()};
    while (at("&")) {
      ++pos_;
      kids.push_back(unary());
    }
    return kids.size() == 1 ? kids[0] : node::conj(std::move(kids));
  }

  // "E x" / "A x" with an identifier following the letter.
  bool quantifier_ahead(char& q, std::string& var) {
    space();
    if (pos_ >= text_.size() || (text_[pos_] != 'E' && text_[pos_] != 'A')) return false;
    std::size_t p = pos_ + 1;
    if (p < text_.size() && detail::is_identifier_char(text_[p])) return false;
    detail::skip_space(text_, p);
    if (p >= text_.size() || !detail::is_identifier_start(text_[p])) return false;
    std::size_t end = p;
    while (end < text_.size() && detail::is_identifier_char(text_[end])) ++end;
    q = text_[pos_];
    var = std::string(text_.substr(p, end - p));
    pos_ = end;
    return true;
  }

  NodePtr unary() {
    if (at("~")) {
      ++pos_;
      return node::negate(unary());
    }
    char q;
    std::string var;
    if (quantifier_ahead(q, var)) {
      auto body = unary();
      return q == 'E' ? node::exists(var, body) : node::forall(var, body);
    }
    if (at("(")) {
      const std::size_t save = pos_;
      try {
        return atom();
      } catch (const Error&) {
        pos_ = save;
      }
      ++pos_;
      auto inner = implication();
      if (!at(")")) error("expected ')'");
      ++pos_;
      return inner;
    }
    return atom();
  }

  NodePtr atom() {
    space();
    if (pos_ >= text_.size()) error("expected a formula");
    Poly lhs = detail::parse_poly_prefix(text_, pos_);
    bool equal;
    if (at("!=")) {
      pos_ += 2;
      equal = false;
    } else if (at("=")) {
      ++pos_;
      equal = true;
    } else {
      error("expected '=' or '!='");
    }
    space();
    Poly rhs = detail::parse_poly_prefix(text_, pos_);
    return equal ? node::eq(lhs, rhs) : node::neq(lhs, rhs);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Applies the binding rules to a raw parse tree.
class Binder {
 public:
  Binder(const std::vector<std::string>& params, std::set<std::string> free, FreshNames& fresh)
      : params_(params.begin(), params.end()), free_(std::move(free)), fresh_(fresh) {}

  NodePtr run(const NodePtr& n, const std::map<std::string, std::string>& scope) {
    if (is_atom(n->kind)) {
      if (scope.empty()) return n;
      auto l = n->lhs.rename(scope), r = n->rhs.rename(scope);
      return n->kind == NodeKind::Eq ? node::eq(l, r) : node::neq(l, r);
    }
    if (is_quantifier(n->kind)) {
      if (params_.count(n->var))
        fail(ErrorKind::UnboundVariableCollision, "quantifier binds base parameter '" + n->var + "'");
      bool shadows = free_.count(n->var) > 0;
      for (const auto& [from, to] : scope)
        if (from == n->var || to == n->var) shadows = true;
      const std::string v = shadows ? fresh_.next() : n->var;
      auto inner = scope;
      inner[n->var] = v;
      auto body = run(n->kids[0], inner);
      return n->kind == NodeKind::Exists ? node::exists(v, body) : node::forall(v, body);
    }
    auto copy = std::make_shared<FormulaNode>(*n);
    for (auto& k : copy->kids) k = run(k, scope);
    return copy;
  }

 private:
  std::set<std::string> params_;
  std::set<std::string> free_;
  FreshNames& fresh_;
};

}  // namespace

Formula parse_formula(std::string_view text, const std::vector<std::string>& params,
                      const std::optional<std::vector<std::string>>& free_order) {
  NodePtr raw = FormulaParser(text).parse();

  std::vector<std::string> bound, occurring;
  collect_free(raw, bound, occurring);
  std::vector<std::string> free;
  for (const auto& v : occurring)
    if (std::find(params.begin(), params.end(), v) == params.end()) free.push_back(v);
  if (free_order) {
    for (const auto& v : free)
      if (std::find(free_order->begin(), free_order->end(), v) == free_order->end())
        fail(ErrorKind::VariableMismatch, "free variable '" + v + "' missing from the declared order");
    free = *free_order;
  }

  std::set<std::string> taken(params.begin(), params.end());
  taken.insert(free.begin(), free.end());
  collect_names(raw, taken);
  FreshNames fresh(taken);
  Binder binder(params, std::set<std::string>(free.begin(), free.end()), fresh);
  return Formula(params, free, binder.run(raw, {}));
}

// ---------------------------------------------------------------------------
// Prenex normal form

namespace {

NodePtr strip_implications(const NodePtr& n) {
  if (is_atom(n->kind)) return n;
  if (n->kind == NodeKind::Implies)
    return node::disj({node::negate(strip_implications(n->kids[0])), strip_implications(n->kids[1])});
  auto copy = std::make_shared<FormulaNode>(*n);
  for (auto& k : copy->kids) k = strip_implications(k);
  return copy;
}

NodePtr nnf(const NodePtr& n, bool negated) {
  switch (n->kind) {
    case NodeKind::Eq:
      return negated ? node::neq(n->lhs, n->rhs) : n;
    case NodeKind::Neq:
      return negated ? node::eq(n->lhs, n->rhs) : n;
    case NodeKind::Not:
      return nnf(n->kids[0], !negated);
    case NodeKind::And:
    case NodeKind::Or: {
      std::vector<NodePtr> kids;
      for (const auto& k : n->kids) kids.push_back(nnf(k, negated));
      const bool is_and = (n->kind == NodeKind::And) != negated;
      return is_and ? node::conj(std::move(kids)) : node::disj(std::move(kids));
    }
    case NodeKind::Exists:
    case NodeKind::Forall: {
      const bool ex = (n->kind == NodeKind::Exists) != negated;
      auto body = nnf(n->kids[0], negated);
      return ex ? node::exists(n->var, body) : node::forall(n->var, body);
    }
    case NodeKind::Implies:
      break;
  }
  fail(ErrorKind::InvalidArgument, "implication survived normalization");
}

struct Prefixed {
  std::vector<std::pair<NodeKind, std::string>> prefix;
  NodePtr matrix;
};

void names_of(const Prefixed& p, std::set<std::string>& out) {
  for (const auto& [k, v] : p.prefix) out.insert(v);
  collect_names(p.matrix, out);
}

Prefixed rename_bound(Prefixed p, const std::set<std::string>& avoid, FreshNames& fresh) {
  std::map<std::string, std::string> ren;
  for (auto& [k, v] : p.prefix)
    if (avoid.count(v)) {
      auto nv = fresh.next();
      ren[v] = nv;
      v = nv;
    }
  if (ren.empty()) return p;
  std::function<NodePtr(const NodePtr&)> go = [&](const NodePtr& n) -> NodePtr {
    if (is_atom(n->kind)) {
      auto l = n->lhs.rename(ren), r = n->rhs.rename(ren);
      return n->kind == NodeKind::Eq ? node::eq(l, r) : node::neq(l, r);
    }
    auto copy = std::make_shared<FormulaNode>(*n);
    for (auto& k : copy->kids) k = go(k);
    return copy;
  };
  p.matrix = go(p.matrix);
  return p;
}

// Input is in negation normal form without implications.
Prefixed pull(const NodePtr& n, FreshNames& fresh) {
  if (is_atom(n->kind)) return {{}, n};
  if (is_quantifier(n->kind)) {
    auto inner = pull(n->kids[0], fresh);
    inner.prefix.insert(inner.prefix.begin(), {n->kind, n->var});
    return inner;
  }
  // And / Or: bound names of one side must not clash with any name on another.
  std::vector<Prefixed> parts;
  for (const auto& k : n->kids) parts.push_back(pull(k, fresh));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::set<std::string> others;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) names_of(parts[j], others);
    parts[i] = rename_bound(std::move(parts[i]), others, fresh);
  }
  Prefixed out;
  std::vector<NodePtr> mats;
  for (auto& p : parts) {
    out.prefix.insert(out.prefix.end(), p.prefix.begin(), p.prefix.end());
    mats.push_back(p.matrix);
  }
  out.matrix = n->kind == NodeKind::And ? node::conj(std::move(mats)) : node::disj(std::move(mats));
  return out;
}

using Clause = std::vector<NodePtr>;

void push_unique(std::vector<NodePtr>& v, const NodePtr& x) {
  for (const auto& y : v)
    if (structurally_equal(x, y)) return;
  v.push_back(x);
}

std::vector<Clause> dnf(const NodePtr& n) {
  if (is_atom(n->kind)) return {{n}};
  std::vector<Clause> out;
  if (n->kind == NodeKind::Or) {
    for (const auto& k : n->kids)
      for (auto& c : dnf(k)) out.push_back(std::move(c));
  } else {
    out = {{}};
    for (const auto& k : n->kids) {
      auto rhs = dnf(k);
      std::vector<Clause> next;
      for (const auto& a : out)
        for (const auto& b : rhs) {
          Clause c = a;
          for (const auto& lit : b) push_unique(c, lit);
          next.push_back(std::move(c));
        }
      out = std::move(next);
    }
  }
  std::vector<Clause> unique;
  for (auto& c : out) {
    bool dup = false;
    for (const auto& u : unique)
      if (u.size() == c.size() && std::equal(u.begin(), u.end(), c.begin(), structurally_equal)) dup = true;
    if (!dup) unique.push_back(std::move(c));
  }
  return unique;
}

}  // namespace

Formula to_prenex(const Formula& f) {
  std::set<std::string> taken(f.params().begin(), f.params().end());
  taken.insert(f.free_vars().begin(), f.free_vars().end());
  collect_names(f.body(), taken);
  FreshNames fresh(taken);

  auto p = pull(nnf(strip_implications(f.body()), false), fresh);
  std::vector<NodePtr> clauses;
  for (auto& c : dnf(p.matrix)) clauses.push_back(node::conj(std::move(c)));
  NodePtr body = node::disj(std::move(clauses));
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
    body = it->first == NodeKind::Exists ? node::exists(it->second, body) : node::forall(it->second, body);
  return f.with_body(body);
}

// ---------------------------------------------------------------------------
// Evaluation

bool DefinableSet::contains(std::span<const Elem> t) const {
  std::vector<Elem> key(t.begin(), t.end());
  return std::binary_search(tuples.begin(), tuples.end(), key);
}

FormulaEvaluator::FormulaEvaluator(const Formula& f, const FiniteField& k) : k_(k) {
  std::map<std::string, std::size_t> slots;
  for (const auto& v : f.params()) slots[v] = nslots_++;
  nparams_ = f.params().size();
  for (const auto& v : f.free_vars()) slots[v] = nslots_++;
  nfree_ = f.free_vars().size();
  root_ = compile(f.body(), slots);
}

FormulaEvaluator::CNode FormulaEvaluator::compile(const NodePtr& n, std::map<std::string, std::size_t>& slots) {
  CNode c{n->kind, {}, 0, {}};
  if (is_atom(n->kind)) {
    c.diff = CompiledPoly(n->lhs - n->rhs, slots, k_);
    return c;
  }
  if (is_quantifier(n->kind)) {
    auto inner = slots;
    c.slot = static_cast<std::uint32_t>(nslots_++);
    inner[n->var] = c.slot;
    c.kids.push_back(compile(n->kids[0], inner));
    return c;
  }
  for (const auto& k : n->kids) c.kids.push_back(compile(k, slots));
  return c;
}

bool FormulaEvaluator::eval(const CNode& n, std::vector<Elem>& s) const {
  switch (n.kind) {
    case NodeKind::Eq: return n.diff.eval(s, k_) == 0;
    case NodeKind::Neq: return n.diff.eval(s, k_) != 0;
    case NodeKind::Not: return !eval(n.kids[0], s);
    case NodeKind::Implies: return !eval(n.kids[0], s) || eval(n.kids[1], s);
    case NodeKind::And:
      for (const auto& k : n.kids)
        if (!eval(k, s)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& k : n.kids)
        if (eval(k, s)) return true;
      return false;
    case NodeKind::Exists:
      for (Elem v = 0; v < k_.q(); ++v) {
        s[n.slot] = v;
        if (eval(n.kids[0], s)) return true;
      }
      return false;
    case NodeKind::Forall:
      for (Elem v = 0; v < k_.q(); ++v) {
        s[n.slot] = v;
        if (!eval(n.kids[0], s)) return false;
      }
      return true;
  }
  return false;
}

bool FormulaEvaluator::holds(std::span<const Elem> s_point, std::span<const Elem> tuple) const {
  if (s_point.size() != nparams_) fail(ErrorKind::InvalidArgument, "base point has the wrong number of coordinates");
  if (tuple.size() != nfree_) fail(ErrorKind::InvalidArgument, "tuple has the wrong arity");
  std::vector<Elem> s(nslots_, 0);
  std::copy(s_point.begin(), s_point.end(), s.begin());
  std::copy(tuple.begin(), tuple.end(), s.begin() + static_cast<std::ptrdiff_t>(nparams_));
  return eval(root_, s);
}

namespace {
void check_budget(std::size_t width, const FiniteField& k, double budget_bits) {
  const double bits = static_cast<double>(width) * std::log2(static_cast<double>(k.q()));
  if (bits > budget_bits + 1e-9)
    fail(ErrorKind::BudgetExceeded, "enumeration needs " + std::to_string(bits) + " bits over " + k.name() +
                                        ", budget is " + std::to_string(budget_bits));
}
}  // namespace

std::vector<std::vector<Elem>> all_points(const FiniteField& k, std::size_t n) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur(n, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      if (++cur[i - 1] < k.q()) break;
      cur[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

DefinableSet eval_formula(const Formula& f, std::span<const Elem> s_point, const FiniteField& k,
                          double budget_bits) {
  check_budget(f.free_vars().size() + f.quantifier_depth(), k, budget_bits);
  for (auto c : s_point)
    if (c >= k.q()) fail(ErrorKind::InvalidArgument, "base point coordinate outside " + k.name());
  FormulaEvaluator ev(f, k);
  DefinableSet out;
  out.q = k.q();
  out.s_point.assign(s_point.begin(), s_point.end());
  out.arity = f.free_vars().size();
  for (auto& t : all_points(k, out.arity))
    if (ev.holds(s_point, t)) out.tuples.push_back(std::move(t));
  return out;
}

std::vector<std::vector<Elem>> s_points_for(const Sweep& sweep, const FiniteField& k, std::size_t nparams) {
  if (!sweep.s_points) return all_points(k, nparams);
  std::vector<std::vector<Elem>> out;
  for (const auto& s : *sweep.s_points) {
    if (s.size() != nparams) fail(ErrorKind::InvalidArgument, "sweep point has the wrong number of coordinates");
    if (std::all_of(s.begin(), s.end(), [&](Elem c) { return c < k.q(); })) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Definable bijections

BijectionVerdict check_definable_bijection(const Formula& psi, const Formula& phi1, const Formula& phi2,
                                           const Sweep& sweep, double budget_bits) {
  if (psi.params() != phi1.params() || psi.params() != phi2.params())
    fail(ErrorKind::VariableMismatch, "formulas live over different base parameters");
  const auto& f1 = phi1.free_vars();
  const auto& f2 = phi2.free_vars();
  const auto& fp = psi.free_vars();
  const std::size_t n1 = f1.size(), n2 = f2.size();
  if (fp.size() != n1 + n2)
    fail(ErrorKind::VariableMismatch, "psi must have exactly the free variables of phi1 and phi2");

  // position in psi's tuple of each coordinate of (phi1 tuple ++ phi2 tuple)
  std::vector<std::size_t> where(n1 + n2);
  std::set<std::string> s1(f1.begin(), f1.end()), s2(f2.begin(), f2.end()), sp(fp.begin(), fp.end());
  bool disjoint = std::none_of(f1.begin(), f1.end(), [&](const auto& v) { return s2.count(v); });
  std::set<std::string> both = s1;
  both.insert(s2.begin(), s2.end());
  if (disjoint && both == sp) {
    for (std::size_t i = 0; i < n1 + n2; ++i) {
      const auto& v = i < n1 ? f1[i] : f2[i - n1];
      where[i] = static_cast<std::size_t>(std::find(fp.begin(), fp.end(), v) - fp.begin());
    }
  } else if (disjoint && !(std::none_of(fp.begin(), fp.end(), [&](const auto& v) { return both.count(v); }))) {
    fail(ErrorKind::VariableMismatch, "psi's free variables do not match phi1 and phi2");
  } else {
    for (std::size_t i = 0; i < n1 + n2; ++i) where[i] = i;
  }

  BijectionVerdict verdict;
  for (const auto& k : sweep.fields) {
    check_budget(n1 + n2 + psi.quantifier_depth(), k, budget_bits);
    FormulaEvaluator ev(psi, k);
    for (const auto& s : s_points_for(sweep, k, psi.params().size())) {
      FiberVerdict fv;
      fv.q = k.q();
      fv.s_point = s;
      auto z1 = eval_formula(phi1, s, k, budget_bits);
      auto z2 = eval_formula(phi2, s, k, budget_bits);
      std::vector<std::size_t> preimages(z2.size(), 0);
      std::vector<Elem> joint(n1 + n2);
      auto psi_holds = [&](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        for (std::size_t i = 0; i < n1; ++i) joint[where[i]] = a[i];
        for (std::size_t i = 0; i < n2; ++i) joint[where[n1 + i]] = b[i];
        return ev.holds(s, joint);
      };
      auto concat = [](std::vector<Elem> a, const std::vector<Elem>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
      };
      for (const auto& a : z1.tuples) {
        std::size_t images = 0;
        std::vector<Elem> last;
        for (std::size_t j = 0; j < z2.size() && fv.pass; ++j) {
          if (!psi_holds(a, z2.tuples[j])) continue;
          ++images;
          ++preimages[j];
          if (images > 1) {
            fv.pass = false;
            fv.reason = "tuple of phi1 has several images";
            fv.witness = concat(a, z2.tuples[j]);
          }
          if (preimages[j] > 1 && fv.pass) {
            fv.pass = false;
            fv.reason = "tuple of phi2 has several preimages";
            fv.witness = concat(a, z2.tuples[j]);
          }
        }
        if (!fv.pass) break;
        if (images == 0) {
          fv.pass = false;
          fv.reason = "tuple of phi1 has no image (|Z(phi1)| = " + std::to_string(z1.size()) +
                      ", |Z(phi2)| = " + std::to_string(z2.size()) + ")";
          fv.witness = a;
          break;
        }
      }
      if (fv.pass)
        for (std::size_t j = 0; j < z2.size(); ++j)
          if (preimages[j] == 0) {
            fv.pass = false;
            fv.reason = "tuple of phi2 has no preimage (|Z(phi1)| = " + std::to_string(z1.size()) +
                        ", |Z(phi2)| = " + std::to_string(z2.size()) + ")";
            fv.witness = z2.tuples[j];
            break;
          }
      if (!fv.pass && verdict.pass) {
        verdict.pass = false;
        verdict.first_failure = fv;
      }
      verdict.fibers.push_back(std::move(fv));
    }
  }
  return verdict;
}

}  // namespace pfs
