#include "hmfree/report.hpp"

#include <sstream>

namespace hmfree {

nlohmann::json CheckReport::to_json() const {
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"witness", f.witness}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"checked", checked}, {"failures", std::move(fails)}};
}

std::string CheckReport::to_text() const {
  std::ostringstream out;
  out << "checked " << checked << ", failures " << failures.size();
  if (!failures.empty()) {
    const auto& f = failures.front();
    out << "; first witness: " << f.witness << " (lhs " << f.lhs << ", rhs " << f.rhs
        << ")";
  }
  return out.str();
}

}  // namespace hmfree
