#include "commands.hpp"

#include <hmfree/error.hpp>
#include <hmfree/hm.hpp>
#include <hmfree/parallel.hpp>

#include <fstream>
#include <sstream>

namespace hmfree::cli {

using nlohmann::json;

std::size_t CliReport::failures() const {
  std::size_t n = 0;
  for (const auto& check : checks)
    if (check.status != "pass") ++n;
  return n;
}

json CliReport::to_json() const {
  json entries = json::array();
  for (const auto& check : checks)
    entries.push_back({{"name", check.name}, {"status", check.status}, {"detail", check.detail}});
  return {{"schema", 1},
          {"command", command},
          {"input_digest", input_digest},
          {"checks", std::move(entries)},
          {"failures", failures()},
          {"exit_status", exit_status()}};
}

std::string CliReport::to_text() const {
  std::ostringstream out;
  out << "# " << command << " (" << input_digest << ")\n";
  for (const auto& check : checks) {
    out << (check.status == "pass" ? "PASS " : check.status == "fail" ? "FAIL " : "ERROR ")
        << check.name;
    if (!check.detail.is_null()) out << "  " << check.detail.dump();
    out << "\n";
  }
  out << "failures: " << failures() << "\n";
  return out.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

CliReport error_report(std::string command, std::string digest, const std::string& what) {
  CliReport report{std::move(command), std::move(digest), {}};
  report.checks.push_back({"input", "error", json{{"message", what}}});
  return report;
}

}  // namespace

InstanceFile load(const Options& options, std::string& digest) {
  const std::string bytes = slurp(options.file);
  digest = content_digest(bytes);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::exception& e) {
    throw ValidationError("instance file '" + options.file + "' is not valid JSON: " +
                          e.what());
  }
  InstanceFile instance = parse_instance(doc);
  if (options.fuel) {
    std::map<std::string, RewriteSystem> adjusted;
    for (const auto& [name, system] : instance.rewrites)
      adjusted.emplace(name,
                       RewriteSystem(system.signature(), system.rules(), *options.fuel));
    instance.rewrites = std::move(adjusted);
  }
  return instance;
}

CliReport cmd_check_hom(const Options& options, const std::string& map_name) {
  std::string digest;
  try {
    const InstanceFile instance = load(options, digest);
    const MapSpec& spec = resolve_map(instance, map_name);
    if (spec.domain_ref.empty() || spec.codomain_ref.empty())
      throw ValidationError("map '" + map_name +
                            "' must reference its algebras by name for check-hom");
    const Algebra& from = resolve_algebra(instance, spec.domain_ref);
    const Algebra& to = resolve_algebra(instance, spec.codomain_ref);

    CliReport report{"check-hom", digest, {}};
    const auto violation = find_hom_violation(spec.map, from, to);
    if (!violation) {
      report.checks.push_back({"homomorphism:" + map_name, "pass", json()});
    } else {
      json witness = {{"label", violation->label},
                      {"args", violation->args},
                      {"lhs", violation->lhs},
                      {"rhs", violation->rhs}};
      report.checks.push_back(
          {"homomorphism:" + map_name, "fail", json{{"witness", std::move(witness)}}});
    }
    return report;
  } catch (const Error& e) {
    return error_report("check-hom", digest, e.what());
  }
}

CliReport cmd_free_extend(const Options& options, const std::string& map_name,
                          const std::string& term_text) {
  std::string digest;
  try {
    const InstanceFile instance = load(options, digest);
    const MapSpec& spec = resolve_map(instance, map_name);
    if (spec.domain_ref.empty() || spec.codomain_ref.empty())
      throw ValidationError("map '" + map_name + "' must name a generator set and an algebra");
    const GeneratorSet& generators = resolve_generators(instance, spec.domain_ref);
    const Algebra& target = resolve_algebra(instance, spec.codomain_ref);

    const Term term = parse_term(term_text);
    validate_term(term, target.signature(), generators);
    const Element value = free_extension(spec.map, target)(term);

    CliReport report{"free-extend", digest, {}};
    report.checks.push_back({"free-extend:" + map_name, "pass",
                             json{{"term", to_text(term)}, {"value", value}}});
    return report;
  } catch (const Error& e) {
    return error_report("free-extend", digest, e.what());
  }
}

CliReport cmd_verify_diagrams(const Options& options) {
  std::string digest;
  try {
    const InstanceFile instance = load(options, digest);
    CliReport report{"verify-diagrams", digest, {}};

    // Naturality of the constant embedding along every named map.
    for (const auto& [name, spec] : instance.maps) {
      const CheckReport check = check_naturality_square(spec.map, spec.map.domain());
      report.checks.push_back({"naturality:" + name, check.ok() ? "pass" : "fail",
                               check.to_json()});
    }

    // The constant embedding is a homomorphism into the lifted algebra.
    for (const auto& [name, algebra] : instance.algebras) {
      const CheckReport check = check_hm_embed_homomorphism(algebra);
      report.checks.push_back({"hm-embed-hom:" + name, check.ok() ? "pass" : "fail",
                               check.to_json()});
    }

    // Canonical-homomorphism identity over every generator set, free and
    // under every declared rewrite system.
    if (instance.signature) {
      for (const auto& [gname, generators] : instance.generators) {
        {
          const CheckReport check =
              check_h_identity(*instance.signature, generators, options.depth);
          report.checks.push_back({"h-identity:" + gname + ":free",
                                   check.ok() ? "pass" : "fail", check.to_json()});
        }
        for (const auto& [rname, system] : instance.rewrites) {
          const CheckReport check =
              check_h_identity(*instance.signature, generators, options.depth, system);
          report.checks.push_back({"h-identity:" + gname + ":" + rname,
                                   check.ok() ? "pass" : "fail", check.to_json()});
        }
      }
    }
    return report;
  } catch (const Error& e) {
    return error_report("verify-diagrams", digest, e.what());
  }
}

CliReport cmd_verify_embedding(const Options& options,
                               const std::optional<std::string>& case_name) {
  std::string digest;
  try {
    const InstanceFile instance = load(options, digest);
    CliReport report{"verify-embedding", digest, {}};

    std::vector<std::string> names;
    if (case_name) {
      names.push_back(*case_name);
    } else {
      for (const auto& [name, c] : instance.embeddings) names.push_back(name);
    }
    if (names.empty()) throw ValidationError("no embedding cases in the instance file");
    if (!instance.signature) throw ValidationError("embeddings need a signature section");

    for (const auto& name : names) {
      const auto it = instance.embeddings.find(name);
      if (it == instance.embeddings.end())
        throw ValidationError("unknown embedding case '" + name + "'");
      const EmbeddingCase& c = it->second;
      const GeneratorSet& subspace = resolve_generators(instance, c.subspace);
      const GeneratorSet& ambient = resolve_generators(instance, c.ambient);
      const Retraction retraction = resolve_retraction(instance, c.retraction);
      std::optional<RewriteSystem> rewrites;
      if (c.rewrites) rewrites = resolve_rewrites(instance, *c.rewrites);

      const PipelineReport pipeline = theorem2_pipeline(
          *instance.signature, subspace, ambient, retraction, options.depth, rewrites);
      report.checks.push_back(
          {"embedding:" + name, pipeline.ok() ? "pass" : "fail", pipeline.to_json()});
    }
    return report;
  } catch (const Error& e) {
    return error_report("verify-embedding", digest, e.what());
  }
}

namespace {

// Splits "f(a, b, {x,y})" into the function name and top-level arguments.
struct Expression {
  std::string name;
  std::vector<std::string> args;
};

std::string trim_copy(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

Expression parse_expression(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ValidationError("expression must look like name(arg, ...)");
  Expression expr;
  expr.name = trim_copy(text.substr(0, open));
  const std::string body = text.substr(open + 1, close - open - 1);
  std::string current;
  int depth = 0;
  for (const char c : body) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      expr.args.push_back(trim_copy(current));
      current.clear();
      continue;
    }
    current += c;
  }
  if (!trim_copy(current).empty()) expr.args.push_back(trim_copy(current));
  return expr;
}

std::vector<Element> parse_value_set(const std::string& text) {
  const std::string t = trim_copy(text);
  if (t.size() < 2 || t.front() != '{' || t.back() != '}')
    throw ValidationError("value set must look like {a,b}");
  std::vector<Element> out;
  std::string current;
  for (const char c : t.substr(1, t.size() - 2)) {
    if (c == ',') {
      const std::string item = trim_copy(current);
      if (!item.empty()) out.push_back(item);
      current.clear();
      continue;
    }
    current += c;
  }
  const std::string item = trim_copy(current);
  if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

CliReport cmd_hm_eval(const Options& options, const std::string& expression) {
  std::string digest;
  try {
    const InstanceFile instance = load(options, digest);
    const Expression expr = parse_expression(expression);
    CliReport report{"hm-eval", digest, {}};

    if (expr.name == "measure_where") {
      if (expr.args.size() != 4)
        throw ValidationError("measure_where(fn, a, b, {values}) takes 4 arguments");
      const StepFn<Element>& fn = resolve_stepfn(instance, expr.args[0]);
      const Rational measure =
          measure_where(fn, parse_rational(expr.args[1]), parse_rational(expr.args[2]),
                        parse_value_set(expr.args[3]));
      report.checks.push_back({"hm-eval:measure_where", "pass",
                               json{{"value", to_string(measure)}}});
    } else if (expr.name == "in_neighborhood") {
      if (expr.args.size() != 6)
        throw ValidationError(
            "in_neighborhood(fn, a, b, {values}, eps, base) takes 6 arguments");
      const StepFn<Element>& fn = resolve_stepfn(instance, expr.args[0]);
      const StepFn<Element>& base = resolve_stepfn(instance, expr.args[5]);
      const bool inside =
          in_neighborhood(fn, parse_rational(expr.args[1]), parse_rational(expr.args[2]),
                          parse_value_set(expr.args[3]), parse_rational(expr.args[4]), base);
      // A membership query is a check: a false answer is a failing outcome.
      report.checks.push_back({"hm-eval:in_neighborhood", inside ? "pass" : "fail",
                               json{{"value", inside}}});
    } else if (expr.name == "lift_op") {
      if (expr.args.size() < 2)
        throw ValidationError("lift_op(algebra, label, fn...) takes at least 2 arguments");
      const Algebra& algebra = resolve_algebra(instance, expr.args[0]);
      std::vector<StepFn<Element>> fns;
      for (std::size_t i = 2; i < expr.args.size(); ++i)
        fns.push_back(resolve_stepfn(instance, expr.args[i]));
      const StepFn<Element> lifted =
          lift_op(algebra, static_cast<int>(fns.size()), expr.args[1], fns);
      report.checks.push_back({"hm-eval:lift_op", "pass", json{{"value", to_text(lifted)}}});
    } else if (expr.name == "value_at") {
      if (expr.args.size() != 2)
        throw ValidationError("value_at(fn, t) takes 2 arguments");
      const StepFn<Element>& fn = resolve_stepfn(instance, expr.args[0]);
      report.checks.push_back({"hm-eval:value_at", "pass",
                               json{{"value", fn.value_at(parse_rational(expr.args[1]))}}});
    } else {
      throw ValidationError("unknown hm-eval function '" + expr.name + "'");
    }
    return report;
  } catch (const Error& e) {
    return error_report("hm-eval", digest, e.what());
  }
}

}  // namespace hmfree::cli
