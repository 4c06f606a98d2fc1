#include "pfs/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pfs/errors.hpp"

namespace pfs {

namespace {

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(const std::string& name) {
  Poly p;
  p.vars_ = {name};
  p.add_term({1}, Rational(1));
  return p;
}

void Poly::add_term(Exponents e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Poly::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (auto x : e)
      if (x) return false;
  return true;
}

Rational Poly::constant_term() const {
  for (const auto& [e, c] : terms_)
    if (std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; })) return c;
  return Rational(0);
}

std::uint32_t Poly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

std::uint32_t Poly::degree_in(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  if (it == vars_.end()) return 0;
  const auto idx = static_cast<std::size_t>(it - vars_.begin());
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

std::vector<std::string> Poly::used_variables() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    for (const auto& [e, c] : terms_)
      if (e[i]) {
        out.push_back(vars_[i]);
        break;
      }
  return out;
}

Poly Poly::with_variables(const std::vector<std::string>& vars) const {
  std::vector<std::size_t> target(vars_.size(), SIZE_MAX);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it != vars.end()) target[i] = static_cast<std::size_t>(it - vars.begin());
  }
  Poly out;
  out.vars_ = vars;
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (target[i] == SIZE_MAX) fail(ErrorKind::MissingVariable, "variable '" + vars_[i] + "' not in target list");
      ne[target[i]] = e[i];
    }
    out.add_term(std::move(ne), c);
  }
  return out;
}

Poly Poly::substitute(const std::map<std::string, Poly>& values) const {
  Poly result;
  for (const auto& [e, c] : terms_) {
    Poly term = Poly::constant(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      auto it = values.find(vars_[i]);
      Poly base = it == values.end() ? Poly::variable(vars_[i]) : it->second;
      term = term * base.pow(e[i]);
    }
    result = result + term;
  }
  // Keep untouched variables visible in a stable order.
  std::vector<std::string> vars;
  for (const auto& v : vars_)
    if (!values.count(v)) vars.push_back(v);
  return result.with_variables(merge_vars(vars, result.vars_));
}

Poly Poly::rename(const std::map<std::string, std::string>& names) const {
  Poly out = *this;
  for (auto& v : out.vars_) {
    auto it = names.find(v);
    if (it != names.end()) v = it->second;
  }
  return out;
}

Poly Poly::operator-() const { return scaled(Rational(-1)); }

Poly Poly::scaled(const Rational& c) const {
  Poly out;
  out.vars_ = vars_;
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  auto vars = merge_vars(vars_, o.vars_);
  Poly out = with_variables(vars);
  Poly other = o.with_variables(vars);
  for (const auto& [e, c] : other.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  auto vars = merge_vars(vars_, o.vars_);
  Poly a = with_variables(vars);
  Poly b = o.with_variables(vars);
  Poly out;
  out.vars_ = vars;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(vars.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(std::move(e), ca * cb);
    }
  return out;
}

Poly Poly::pow(std::uint32_t k) const {
  Poly result = Poly::constant(Rational(1)).with_variables(vars_);
  Poly base = *this;
  for (; k; k >>= 1) {
    if (k & 1) result = result * base;
    if (k > 1) base = base * base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  auto vars = merge_vars(a.vars_, b.vars_);
  return a.with_variables(vars).terms_ == b.with_variables(vars).terms_;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  // Print over the used variables in name order so equal polynomials print
  // identically regardless of how they were built.
  auto names = used_variables();
  std::sort(names.begin(), names.end());
  if (names != vars_) return with_variables(names).to_string();
  std::vector<std::pair<const Exponents*, const Rational*>> order;
  for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
  auto degree = [](const Exponents& e) {
    std::uint32_t s = 0;
    for (auto x : e) s += x;
    return s;
  };
  std::sort(order.begin(), order.end(), [&](const auto& l, const auto& r) {
    auto dl = degree(*l.first), dr = degree(*r.first);
    if (dl != dr) return dl > dr;
    return *l.first > *r.first;
  });

  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : order) {
    std::string mono;
    for (std::size_t i = 0; i < e->size(); ++i) {
      if (!(*e)[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if ((*e)[i] > 1) mono += "^" + std::to_string((*e)[i]);
    }
    Rational coef = *c;
    const bool negative = coef < 0;
    if (!first) out << (negative ? " - " : " + ");
    if (!first && negative) coef = -coef;
    if (mono.empty()) {
      out << pfs::to_string(coef);
    } else if (coef == 1) {
      out << mono;
    } else if (coef == -1) {
      out << "-" << mono;
    } else {
      out << pfs::to_string(coef) << "*" << mono;
    }
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

bool is_identifier_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_identifier_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

namespace {

[[noreturn]] void syntax_error(std::size_t pos, const std::string& what) {
  Error err(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos));
  err.position = pos;
  throw err;
}

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t& pos) : text_(text), pos_(pos) {}

  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_space(text_, pos_);
      if (peek() == '+') {
        ++pos_;
        acc = acc + term();
      } else if (peek() == '-' && !(pos_ + 1 < text_.size() && text_[pos_ + 1] == '>')) {
        ++pos_;
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      skip_space(text_, pos_);
      if (peek() == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (peek() == '/') {
        const std::size_t at = pos_;
        ++pos_;
        Poly d = unary();
        if (!d.is_constant() || d.constant_term() == 0) syntax_error(at, "division by a non-constant or zero");
        acc = acc.scaled(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    skip_space(text_, pos_);
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    skip_space(text_, pos_);
    if (peek() != '^') return base;
    ++pos_;
    skip_space(text_, pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) syntax_error(pos_, "expected exponent");
    return base.pow(static_cast<std::uint32_t>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
  }

  Poly atom() {
    skip_space(text_, pos_);
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly::constant(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (is_identifier_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
      return Poly::variable(std::string(text_.substr(start, pos_ - start)));
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_space(text_, pos_);
      if (peek() != ')') syntax_error(pos_, "expected ')'");
      ++pos_;
      return inner;
    }
    syntax_error(pos_, c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t& pos_;
};

}  // namespace

Poly parse_poly_prefix(std::string_view text, std::size_t& pos) { return PolyParser(text, pos).expr(); }

}  // namespace detail

Poly parse_poly(std::string_view text) {
  std::size_t pos = 0;
  Poly p = detail::parse_poly_prefix(text, pos);
  detail::skip_space(text, pos);
  if (pos != text.size()) {
    Error err(ErrorKind::SyntaxError, "trailing input at position " + std::to_string(pos));
    err.position = pos;
    throw err;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Evaluation

CompiledPoly::CompiledPoly(const Poly& f, const std::map<std::string, std::size_t>& slot_of, const FiniteField& k) {
  const auto& vars = f.variables();
  for (const auto& [e, c] : f.terms()) {
    Term t{k.from_rational(c), {}};
    if (t.coef == 0) continue;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      auto it = slot_of.find(vars[i]);
      if (it == slot_of.end()) fail(ErrorKind::MissingVariable, "no value for variable '" + vars[i] + "'");
      t.factors.emplace_back(static_cast<std::uint32_t>(it->second), e[i]);
    }
    terms_.push_back(std::move(t));
  }
}

Elem CompiledPoly::eval(std::span<const Elem> slots, const FiniteField& k) const {
  Elem acc = 0;
  for (const auto& t : terms_) {
    Elem v = t.coef;
    for (const auto& [slot, exp] : t.factors) {
      v = k.mul(v, exp == 1 ? slots[slot] : k.pow(slots[slot], exp));
      if (v == 0) break;
    }
    acc = k.add(acc, v);
  }
  return acc;
}

Elem poly_eval(const Poly& f, const std::map<std::string, Elem>& assign, const FiniteField& k) {
  std::map<std::string, std::size_t> slots;
  std::vector<Elem> values;
  for (const auto& [name, v] : assign) {
    if (v >= k.q()) fail(ErrorKind::InvalidArgument, "value for '" + name + "' is not an element of " + k.name());
    slots[name] = values.size();
    values.push_back(v);
  }
  return CompiledPoly(f, slots, k).eval(values, k);
}

FqPoly to_fq_poly(const Poly& f, const std::string& var, const std::map<std::string, Elem>& assign,
                  const FiniteField& k) {
  const auto& vars = f.variables();
  auto vit = std::find(vars.begin(), vars.end(), var);
  const std::size_t vidx = vit == vars.end() ? SIZE_MAX : static_cast<std::size_t>(vit - vars.begin());
  std::vector<Elem> coeffs(f.degree_in(var) + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    Elem v = k.from_rational(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == vidx || !e[i]) continue;
      auto it = assign.find(vars[i]);
      if (it == assign.end()) fail(ErrorKind::MissingVariable, "no value for variable '" + vars[i] + "'");
      v = k.mul(v, k.pow(it->second, e[i]));
    }
    const std::uint32_t d = vidx == SIZE_MAX ? 0 : e[vidx];
    coeffs[d] = k.add(coeffs[d], v);
  }
  return FqPoly(k, std::move(coeffs));
}

std::vector<std::uint32_t> distinct_degree_profile(const Poly& g, const FiniteField& k) {
  auto used = g.used_variables();
  if (used.size() > 1) fail(ErrorKind::InvalidArgument, "distinct-degree profile needs a univariate polynomial");
  const std::string var = used.empty() ? std::string("x") : used.front();
  return distinct_degree_profile(to_fq_poly(g, var, {}, k));
}

}  // namespace pfs
