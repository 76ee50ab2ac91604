#pragma once

#include <stdexcept>
#include <string>

namespace hmfree {

/// Base class for everything the engine throws.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: broken invariants, unknown names, schema violations.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Rewriting stopped before reaching a normal form. Signals a possibly
/// non-terminating rule set; a partially rewritten term is never returned.
class FuelExhausted : public Error {
public:
  explicit FuelExhausted(const std::string& what) : Error(what) {}
};

}  // namespace hmfree
