#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/poly.hpp"

namespace pfs {

enum class NodeKind { Eq, Neq, And, Or, Not, Implies, Exists, Forall };

struct FormulaNode;
using NodePtr = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  NodeKind kind;
  Poly lhs, rhs;              // Eq, Neq
  std::string var;            // Exists, Forall
  std::vector<NodePtr> kids;  // And/Or: n-ary; Not, quantifiers: one; Implies: two
};

namespace node {
NodePtr eq(Poly lhs, Poly rhs);
NodePtr neq(Poly lhs, Poly rhs);
NodePtr conj(std::vector<NodePtr> kids);
NodePtr disj(std::vector<NodePtr> kids);
NodePtr negate(NodePtr kid);
NodePtr implies(NodePtr lhs, NodePtr rhs);
NodePtr exists(std::string var, NodePtr body);
NodePtr forall(std::string var, NodePtr body);
NodePtr truth();  // 0 = 0
}  // namespace node

bool structurally_equal(const NodePtr& a, const NodePtr& b);

// A first-order ring formula over the affine base with coordinates params().
// Every polynomial variable is a parameter, a free variable, or bound by an
// enclosing quantifier, and no variable is bound twice on one branch.
class Formula {
 public:
  Formula(std::vector<std::string> params, std::vector<std::string> free_vars, NodePtr body);

  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& free_vars() const { return free_; }
  const NodePtr& body() const { return body_; }

  std::size_t quantifier_depth() const;
  bool is_quantifier_free() const;
  std::string to_string() const;

  // Replaces free variables and parameters by polynomials, renaming binders
  // that would capture. The result lives over the given params/free lists.
  Formula substitute(const std::map<std::string, Poly>& values, std::vector<std::string> params,
                     std::vector<std::string> free_vars) const;
  Formula with_body(NodePtr body) const { return Formula(params_, free_, std::move(body)); }
  Formula conjoin(const Formula& other) const;

  friend bool operator==(const Formula& a, const Formula& b) {
    return a.params_ == b.params_ && a.free_ == b.free_ && structurally_equal(a.body_, b.body_);
  }

 private:
  std::vector<std::string> params_;
  std::vector<std::string> free_;
  NodePtr body_;
};

// Grammar: E/A quantifiers ("E x (...)"), &, |, ~, ->, =, != over polynomial
// terms; whitespace-insensitive. Free variables are ordered by first
// occurrence unless `free_order` is supplied, in which case every free
// variable must be listed (VariableMismatch otherwise). A binder that shadows
// an enclosing binder or a free variable is renamed to a fresh name; binding
// a base parameter is an UnboundVariableCollision.
Formula parse_formula(std::string_view text, const std::vector<std::string>& params = {},
                      const std::optional<std::vector<std::string>>& free_order = std::nullopt);

std::string to_string(const NodePtr& node);

// Q1 x1 ... Qm xm [disjunction of conjunctions of = / != atoms].
Formula to_prenex(const Formula& f);

// Z(phi, s, F_q): the sorted set of free-variable tuples satisfying f.
struct DefinableSet {
  std::uint32_t q = 0;
  std::vector<Elem> s_point;
  std::size_t arity = 0;
  std::vector<std::vector<Elem>> tuples;  // sorted, unique

  std::size_t size() const { return tuples.size(); }
  bool empty() const { return tuples.empty(); }
  bool contains(std::span<const Elem> t) const;
  friend bool operator==(const DefinableSet& a, const DefinableSet& b) {
    return a.q == b.q && a.arity == b.arity && a.tuples == b.tuples;
  }
};

inline constexpr double kDefaultBudgetBits = 28.0;

// Compiled evaluator for one (formula, field) pair. Quantifiers enumerate all
// of F_q.
class FormulaEvaluator {
 public:
  FormulaEvaluator(const Formula& f, const FiniteField& k);
  bool holds(std::span<const Elem> s_point, std::span<const Elem> tuple) const;
  const FiniteField& field() const { return k_; }

 private:
  struct CNode {
    NodeKind kind;
    CompiledPoly diff;  // lhs - rhs
    std::uint32_t slot = 0;
    std::vector<CNode> kids;
  };
  CNode compile(const NodePtr& n, std::map<std::string, std::size_t>& slots);
  bool eval(const CNode& n, std::vector<Elem>& slots) const;

  FiniteField k_;
  std::size_t nparams_ = 0, nfree_ = 0, nslots_ = 0;
  CNode root_;
};

// Enumerates F_q^(#free) in lexicographic order. BudgetExceeded when
// (#free + quantifier depth) * log2(q) > budget_bits.
DefinableSet eval_formula(const Formula& f, std::span<const Elem> s_point, const FiniteField& k,
                          double budget_bits = kDefaultBudgetBits);

// A field sweep: the fields to test and the base points to test in each.
// With no explicit s_points every point of F_q^(#params) is used; explicit
// points with a coordinate >= q are skipped for that field.
struct Sweep {
  std::vector<FiniteField> fields;
  std::optional<std::vector<std::vector<Elem>>> s_points;
};
std::vector<std::vector<Elem>> s_points_for(const Sweep& sweep, const FiniteField& k, std::size_t nparams);
// All tuples of F_q^n in lexicographic order.
std::vector<std::vector<Elem>> all_points(const FiniteField& k, std::size_t n);

struct FiberVerdict {
  std::uint32_t q = 0;
  std::vector<Elem> s_point;
  bool pass = true;
  std::string reason;
  std::vector<Elem> witness;  // offending tuple (phi1 ++ phi2 coordinates, or a lone side)
};

struct BijectionVerdict {
  bool pass = true;
  std::vector<FiberVerdict> fibers;
  std::optional<FiberVerdict> first_failure;
};

// Checks, fiber by fiber, that Z(psi) restricted to Z(phi1) x Z(phi2) is the
// graph of a bijection Z(phi1) -> Z(phi2). psi's free variables are matched
// to phi1's then phi2's by name when the names are disjoint, otherwise by
// position.
BijectionVerdict check_definable_bijection(const Formula& psi, const Formula& phi1, const Formula& phi2,
                                           const Sweep& sweep, double budget_bits = kDefaultBudgetBits);

}  // namespace pfs
