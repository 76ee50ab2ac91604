#include "hmfree/signature.hpp"

#include "hmfree/error.hpp"

#include <algorithm>
#include <set>

namespace hmfree {

Signature Signature::from_params(const std::map<int, std::vector<std::string>>& raw) {
  Signature sig;
  for (const auto& [arity, labels] : raw) {
    if (arity < 0) throw ValidationError("negative arity " + std::to_string(arity));
    if (labels.empty())
      throw ValidationError("arity " + std::to_string(arity) + " declared with no labels");
    std::set<std::string> seen;
    for (const auto& label : labels) {
      if (label.empty()) throw ValidationError("empty operation label");
      if (!seen.insert(label).second)
        throw ValidationError("duplicate label '" + label + "' at arity " +
                              std::to_string(arity));
    }
    std::vector<std::string> sorted(labels);
    std::sort(sorted.begin(), sorted.end());
    sig.params_.emplace(arity, std::move(sorted));
  }
  return sig;
}

std::vector<int> Signature::arities() const {
  std::vector<int> out;
  out.reserve(params_.size());
  for (const auto& [arity, labels] : params_) out.push_back(arity);
  return out;
}

bool Signature::has_op(int arity, const std::string& label) const {
  auto it = params_.find(arity);
  if (it == params_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), label);
}

const std::vector<std::string>& Signature::labels(int arity) const {
  auto it = params_.find(arity);
  if (it == params_.end())
    throw ValidationError("signature has no arity " + std::to_string(arity));
  return it->second;
}

}  // namespace hmfree
