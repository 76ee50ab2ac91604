#pragma once

#include <map>
#include <string>
#include <vector>

namespace hmfree {

/// Finite discrete signature: for each populated arity a nonempty set of
/// parameter labels, each label naming one operation of that arity.
/// Arity 0 operations are constants: they take a parameter and an empty
/// argument tuple.
class Signature {
public:
  /// The empty signature (no operations at all) is valid.
  Signature() = default;

  /// Validates a raw description. Throws ValidationError on a duplicate
  /// label within an arity or an empty label set for a listed arity.
  static Signature from_params(const std::map<int, std::vector<std::string>>& raw);

  const std::map<int, std::vector<std::string>>& params() const { return params_; }

  std::vector<int> arities() const;
  bool has_arity(int arity) const { return params_.count(arity) != 0; }
  bool has_op(int arity, const std::string& label) const;

  /// Labels of the given arity, sorted. Throws if the arity is not listed.
  const std::vector<std::string>& labels(int arity) const;

  bool operator==(const Signature& other) const = default;

private:
  std::map<int, std::vector<std::string>> params_;  // arity -> sorted labels
};

}  // namespace hmfree
