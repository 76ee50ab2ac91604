#include "hmfree/rational.hpp"

#include "hmfree/error.hpp"

#include <cctype>

namespace hmfree {
namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw ValidationError("empty integer in rational literal");
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size())
    throw ValidationError("malformed integer '" + std::string(text) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw ValidationError("malformed integer '" + std::string(text) + "'");
  }
  return Integer(std::string(text));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational rational(long long num, long long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  return Rational(Integer(num), Integer(den));
}

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  const std::size_t slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t));
  const Integer num = parse_integer(trim(t.substr(0, slash)));
  const Integer den = parse_integer(trim(t.substr(slash + 1)));
  if (den == 0) throw ValidationError("rational '" + std::string(text) + "' has zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hmfree
