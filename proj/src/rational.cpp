#include "qpsurf/rational.hpp"

#include "qpsurf/errors.hpp"

#include <cctype>
#include <sstream>

namespace qpsurf {

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!is_integer_text(num))
    throw ParseError("malformed rational '" + text + "'");
  if (slash == std::string::npos) return Rational(Integer(num));

  const std::string den = text.substr(slash + 1);
  if (!is_integer_text(den))
    throw ParseError("malformed rational '" + text + "'");
  const Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  return Rational(Integer(num), d);
}

std::string rational_to_string(const Rational& value) {
  std::ostringstream out;
  out << value;  // prints p or p/q in lowest terms
  return out.str();
}

}  // namespace qpsurf
