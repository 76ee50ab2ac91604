#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

// HMFREE_DEPTH and HMFREE_FUEL override the defaults; explicit flags win.
std::optional<long> env_long(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    return std::stol(raw);
  } catch (const std::exception&) {
    std::cerr << "ignoring malformed " << name << "='" << raw << "'\n";
    return std::nullopt;
  }
}

int emit(const hmfree::cli::CliReport& report, const std::string& format) {
  if (format == "json")
    std::cout << report.to_json().dump(2) << "\n";
  else
    std::cout << report.to_text();
  return report.exit_status();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"batch verifier for finite algebras, step functions and free-algebra embeddings"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  hmfree::cli::Options options;
  std::string format = "text";
  if (const auto depth = env_long("HMFREE_DEPTH")) options.depth = static_cast<int>(*depth);
  if (const auto fuel = env_long("HMFREE_FUEL")) options.fuel = *fuel;

  app.add_option("--file", options.file, "instance file (JSON)")->required();
  app.add_option("--depth", options.depth, "term enumeration depth");
  long fuel_flag = -1;
  auto* fuel_opt = app.add_option("--fuel", fuel_flag, "rewrite step budget override");
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));

  std::string map_name;
  std::string term_text;
  std::string expression;
  std::string case_name;

  auto* check_hom = app.add_subcommand("check-hom", "check a named map for the homomorphism equation");
  check_hom->add_option("--map", map_name, "map name")->required();

  auto* free_extend = app.add_subcommand("free-extend", "evaluate a term under the extension of a generator assignment");
  free_extend->add_option("--map", map_name, "generator assignment name")->required();
  free_extend->add_option("--term", term_text, "term in prefix text form")->required();

  auto* verify_diagrams = app.add_subcommand("verify-diagrams", "check naturality, the constant-embedding homomorphism property, and the canonical-homomorphism identity");

  auto* verify_embedding = app.add_subcommand("verify-embedding", "run the embedding pipeline for declared cases");
  verify_embedding->add_option("--case", case_name, "run a single named case");

  auto* hm_eval = app.add_subcommand("hm-eval", "evaluate a step-function expression");
  hm_eval->add_option("--expr", expression, "expression, e.g. measure_where(f, 0, 1, {p})")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (fuel_opt->count() > 0) options.fuel = fuel_flag;

  try {
    if (check_hom->parsed())
      return emit(hmfree::cli::cmd_check_hom(options, map_name), format);
    if (free_extend->parsed())
      return emit(hmfree::cli::cmd_free_extend(options, map_name, term_text), format);
    if (verify_diagrams->parsed())
      return emit(hmfree::cli::cmd_verify_diagrams(options), format);
    if (verify_embedding->parsed()) {
      std::optional<std::string> chosen;
      if (!case_name.empty()) chosen = case_name;
      return emit(hmfree::cli::cmd_verify_embedding(options, chosen), format);
    }
    if (hm_eval->parsed())
      return emit(hmfree::cli::cmd_hm_eval(options, expression), format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
