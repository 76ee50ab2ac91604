#include "hmfree/stepfn.hpp"

#include <cctype>

namespace hmfree {

std::string to_text(const StepFn<std::string>& fn) {
  return stepfn_text(fn, [](const std::string& v) { return v; });
}

namespace {

struct StepFnParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ValidationError("step-function parse error at offset " + std::to_string(pos) +
                          ": " + what + " in '" + std::string(text) + "'");
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Rational number() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/' ||
            text[pos] == '-'))
      ++pos;
    if (pos == start) fail("expected rational");
    return parse_rational(text.substr(start, pos - start));
  }

  std::string value() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) fail("expected value identifier");
    return std::string(text.substr(start, pos - start));
  }

  StepFn<std::string> parse() {
    std::vector<Rational> breaks;
    std::vector<std::string> values;
    while (true) {
      expect('[');
      Rational lo = number();
      expect(',');
      Rational hi = number();
      expect(')');
      expect('-');
      expect('>');
      std::string v = value();
      if (breaks.empty()) {
        breaks.push_back(lo);
      } else if (breaks.back() != lo) {
        fail("pieces must be contiguous");
      }
      breaks.push_back(hi);
      values.push_back(std::move(v));
      skip_ws();
      if (pos >= text.size()) break;
      expect(';');
    }
    return StepFn<std::string>(std::move(breaks), std::move(values));
  }
};

}  // namespace

StepFn<std::string> parse_stepfn(std::string_view text) {
  return StepFnParser{text}.parse();
}

}  // namespace hmfree
