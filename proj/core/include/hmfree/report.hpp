#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace hmfree {

/// One failed comparison: the witness input plus both computed sides.
struct CheckFailure {
  std::string witness;
  std::string lhs;
  std::string rhs;

  bool operator==(const CheckFailure& other) const = default;
};

/// Outcome of an exhaustive or sampled check. Serializes to
/// {"checked": n, "failures": [{"witness","lhs","rhs"}...]}.
struct CheckReport {
  std::size_t checked = 0;
  std::vector<CheckFailure> failures;

  bool ok() const { return failures.empty(); }
  void record(std::string witness, std::string lhs, std::string rhs) {
    failures.push_back({std::move(witness), std::move(lhs), std::move(rhs)});
  }
  void merge(const CheckReport& other) {
    checked += other.checked;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  }

  nlohmann::json to_json() const;
  std::string to_text() const;
};

}  // namespace hmfree
