#include "pfs/rational.hpp"

#include <cctype>

#include "pfs/errors.hpp"

namespace pfs {

Rational make_rational(long num, long den) {
  if (den == 0) fail(ErrorKind::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false))
    fail(ErrorKind::SyntaxError, "not a rational literal: '" + std::string(text) + "'");
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Integer zn(n), zd{std::string(den)};
  if (zd == 0) fail(ErrorKind::SyntaxError, "zero denominator in '" + std::string(text) + "'");
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

}  // namespace pfs
