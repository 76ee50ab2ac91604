#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace hmfree {

using Integer = boost::multiprecision::cpp_int;

/// Exact rational number, always reduced and with a positive denominator.
/// Every breakpoint, measure and epsilon in the engine is one of these;
/// no floating point is used anywhere.
using Rational = boost::multiprecision::cpp_rational;

Rational rational(long long num, long long den = 1);

/// Parses "p" or "p/q" (optional leading '-'). Throws ValidationError on
/// malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when integral, "p/q" otherwise.
std::string to_string(const Rational& value);

}  // namespace hmfree
