#include "pfs/motive.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pfs/errors.hpp"

namespace pfs {

void MotiveClass::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

MotiveClass MotiveClass::constant(const Rational& c) {
  MotiveClass m;
  m.add({}, c);
  return m;
}

MotiveClass MotiveClass::generator(const std::string& name) {
  if (name.empty()) fail(ErrorKind::InvalidArgument, "generator name must be nonempty");
  MotiveClass m;
  m.add({{name}, 0}, 1);
  return m;
}

MotiveClass MotiveClass::lefschetz(std::uint32_t e) {
  MotiveClass m;
  m.add({{}, e}, 1);
  return m;
}

std::vector<std::string> MotiveClass::generators() const {
  std::set<std::string> s;
  for (const auto& [m, c] : terms_) s.insert(m.names.begin(), m.names.end());
  return {s.begin(), s.end()};
}

MotiveClass MotiveClass::operator+(const MotiveClass& o) const {
  MotiveClass out = *this;
  for (const auto& [m, c] : o.terms_) out.add(m, c);
  return out;
}

MotiveClass MotiveClass::operator-(const MotiveClass& o) const { return *this + o.scaled(-1); }

MotiveClass MotiveClass::operator*(const MotiveClass& o) const {
  MotiveClass out;
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      Monomial m;
      std::merge(a.names.begin(), a.names.end(), b.names.begin(), b.names.end(), std::back_inserter(m.names));
      m.lexp = a.lexp + b.lexp;
      out.add(m, ca * cb);
    }
  return out;
}

MotiveClass MotiveClass::scaled(const Rational& c) const {
  MotiveClass out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

MotiveClass MotiveClass::pow(std::uint32_t k) const {
  MotiveClass r = constant(1), b = *this;
  for (; k; k >>= 1, b = b * b)
    if (k & 1) r = r * b;
  return r;
}

std::string MotiveClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.names.size();) {
      std::size_t j = i;
      while (j < m.names.size() && m.names[j] == m.names[i]) ++j;
      if (!mono.empty()) mono += "*";
      mono += "[" + m.names[i] + "]";
      if (j - i > 1) mono += "^" + std::to_string(j - i);
      i = j;
    }
    if (m.lexp) {
      if (!mono.empty()) mono += "*";
      mono += m.lexp == 1 ? "L" : "L^" + std::to_string(m.lexp);
    }
    if (!out.empty()) out += " + ";
    if (mono.empty())
      out += pfs::to_string(c);
    else if (c == 1)
      out += mono;
    else
      out += pfs::to_string(c) + "*" + mono;
  }
  return out;
}

MotiveClass parse_motive(const std::string& text) {
  std::size_t pos = 0;
  auto error = [&](const std::string& what) {
    Error err(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos));
    err.position = pos;
    throw err;
  };
  auto space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> std::uint32_t {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos || pos - start > 9) error("expected an exponent");
    return static_cast<std::uint32_t>(std::stoul(text.substr(start, pos - start)));
  };
  MotiveClass out;
  space();
  if (text.substr(pos) == "0") return out;
  for (;;) {
    space();
    Rational coeff = 1;
    bool have_coeff = false;
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || std::isdigit(static_cast<unsigned char>(text[pos])))) {
      if (text[pos] == '-') ++pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      if (pos == start + 1 && text[start] == '-') {
        coeff = -1;
      } else {
        coeff = parse_rational(text.substr(start, pos - start));
        have_coeff = true;
      }
    }
    MotiveClass term = MotiveClass::constant(coeff);
    bool need_factor = !have_coeff;
    space();
    if (have_coeff && pos < text.size() && text[pos] == '*') {
      ++pos;
      need_factor = true;
    }
    while (need_factor) {
      space();
      MotiveClass factor;
      if (pos < text.size() && text[pos] == '[') {
        auto close = text.find(']', pos);
        if (close == std::string::npos) error("unterminated generator");
        factor = MotiveClass::generator(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
      } else if (pos < text.size() && text[pos] == 'L') {
        ++pos;
        factor = MotiveClass::lefschetz(1);
      } else {
        error("expected a generator or L");
      }
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        factor = factor.pow(number());
      }
      term = term * factor;
      space();
      need_factor = pos < text.size() && text[pos] == '*';
      if (need_factor) ++pos;
    }
    out = out + term;
    space();
    if (pos == text.size()) break;
    if (text[pos] != '+') error("expected '+'");
    ++pos;
  }
  return out;
}

MotiveClass lefschetz_power(long i) {
  if (i < 0) fail(ErrorKind::NegativeExponent, "negative Lefschetz exponent " + std::to_string(i));
  return MotiveClass::lefschetz(static_cast<std::uint32_t>(i));
}

MotiveClass projective_space_class(long d) {
  if (d < 0) fail(ErrorKind::NegativeExponent, "negative projective dimension");
  MotiveClass out;
  for (long i = 0; i <= d; ++i) out = out + lefschetz_power(i);
  return out;
}

MotiveClass blowup_class(const MotiveClass& x, const MotiveClass& z, long r) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "codimension must be at least 1");
  MotiveClass sum;
  for (long i = 1; i < r; ++i) sum = sum + lefschetz_power(i);
  return x + z * sum;
}

void CountTable::set(const std::string& name, std::uint32_t q, const Rational& count, std::vector<Elem> s_point) {
  counts_[{name, q, std::move(s_point)}] = count;
}

bool CountTable::has(const std::string& name, std::uint32_t q, const std::vector<Elem>& s_point) const {
  return counts_.count({name, q, s_point}) || counts_.count({name, q, {}});
}

const Rational& CountTable::get(const std::string& name, std::uint32_t q, const std::vector<Elem>& s_point) const {
  auto it = counts_.find({name, q, s_point});
  if (it == counts_.end()) it = counts_.find({name, q, {}});
  if (it == counts_.end()) fail(ErrorKind::MissingCount, "no count for [" + name + "] at q = " + std::to_string(q));
  return it->second;
}

std::vector<std::string> CountTable::names() const {
  std::set<std::string> s;
  for (const auto& [k, v] : counts_) s.insert(std::get<0>(k));
  return {s.begin(), s.end()};
}

Rational specialize(const MotiveClass& m, std::uint32_t q, const CountTable& table, const std::vector<Elem>& s_point) {
  Rational total = 0;
  for (const auto& [mono, c] : m.terms()) {
    Rational v = c;
    for (const auto& n : mono.names) v *= table.get(n, q, s_point);
    Integer qq = 1;
    mpz_pow_ui(qq.get_mpz_t(), Integer(q).get_mpz_t(), mono.lexp);
    v *= Rational(qq);
    total += v;
  }
  return total;
}

}  // namespace pfs
