#pragma once

#include <hmfree/instance.hpp>

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hmfree::cli {

struct CheckEntry {
  std::string name;
  std::string status;  // "pass" | "fail" | "error"
  nlohmann::json detail;
};

/// Deterministic command report: same inputs, byte-identical output.
struct CliReport {
  std::string command;
  std::string input_digest;
  std::vector<CheckEntry> checks;

  std::size_t failures() const;
  int exit_status() const { return failures() == 0 ? 0 : 1; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct Options {
  std::string file;
  int depth = 2;
  std::optional<long> fuel;  // overrides every rewrite system's budget
};

/// Loads the instance file, applying the fuel override. Also returns the
/// raw bytes' digest through `digest`.
InstanceFile load(const Options& options, std::string& digest);

CliReport cmd_check_hom(const Options& options, const std::string& map_name);
CliReport cmd_free_extend(const Options& options, const std::string& map_name,
                          const std::string& term_text);
CliReport cmd_verify_diagrams(const Options& options);
CliReport cmd_verify_embedding(const Options& options,
                               const std::optional<std::string>& case_name);
CliReport cmd_hm_eval(const Options& options, const std::string& expression);

}  // namespace hmfree::cli
