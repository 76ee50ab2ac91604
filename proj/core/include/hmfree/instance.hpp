#pragma once

#include "hmfree/algebra.hpp"
#include "hmfree/embedding.hpp"
#include "hmfree/rewrite.hpp"
#include "hmfree/signature.hpp"
#include "hmfree/stepfn.hpp"
#include "hmfree/term.hpp"
#include "hmfree/topology.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmfree {

/// Everything a batch instance file may declare. Sections are optional;
/// names are the cross-reference mechanism between them.
struct RetractionSpec {
  std::string kind;  // "uniform" | "metric" | "table"
  std::string subspace;
  std::string ambient;
  std::optional<MetricTable> metric;
  std::map<Element, StepFn<Element>> table;

  bool operator==(const RetractionSpec& other) const = default;
};

struct EmbeddingCase {
  std::string subspace;
  std::string ambient;
  std::string retraction;
  std::optional<std::string> rewrites;

  bool operator==(const EmbeddingCase& other) const = default;
};

/// A named map plus the names it was declared against (empty when the
/// domain or codomain was written inline). Commands that need the algebras
/// or generator sets behind a map resolve these references.
struct MapSpec {
  std::string domain_ref;
  std::string codomain_ref;
  CarrierMap map;

  bool operator==(const MapSpec& other) const = default;
};

struct InstanceFile {
  int schema = 1;
  std::optional<Signature> signature;
  std::map<std::string, GeneratorSet> generators;
  std::map<std::string, Algebra> algebras;
  std::map<std::string, MapSpec> maps;
  std::map<std::string, RewriteSystem> rewrites;
  std::map<std::string, StepFn<Element>> stepfns;
  std::map<std::string, FiniteSpace> spaces;
  std::map<std::string, RetractionSpec> retractions;
  std::map<std::string, EmbeddingCase> embeddings;

  bool operator==(const InstanceFile& other) const = default;
};

// Piecewise serializers. Parsing validates through the usual constructors,
// so a parsed value always satisfies its invariants.
nlohmann::json signature_to_json(const Signature& signature);
Signature signature_from_json(const nlohmann::json& doc);

nlohmann::json algebra_to_json(const Algebra& algebra);
Algebra algebra_from_json(const nlohmann::json& doc, const Signature& signature);

nlohmann::json term_to_json(const Term& t);
Term term_from_json(const nlohmann::json& doc);

nlohmann::json stepfn_to_json(const StepFn<Element>& fn);
StepFn<Element> stepfn_from_json(const nlohmann::json& doc);

nlohmann::json space_to_json(const FiniteSpace& space);
FiniteSpace space_from_json(const nlohmann::json& doc);

InstanceFile parse_instance(const nlohmann::json& doc);
nlohmann::json instance_to_json(const InstanceFile& instance);
InstanceFile load_instance(const std::string& path);

/// Name resolution: an element-set reference is an algebra name (its
/// carrier), a generator-set name, or an inline array in JSON.
const GeneratorSet& resolve_generators(const InstanceFile& instance, const std::string& name);
const Algebra& resolve_algebra(const InstanceFile& instance, const std::string& name);
const MapSpec& resolve_map(const InstanceFile& instance, const std::string& name);
const RewriteSystem& resolve_rewrites(const InstanceFile& instance, const std::string& name);
const StepFn<Element>& resolve_stepfn(const InstanceFile& instance, const std::string& name);

/// Builds the concrete retraction named by a spec (uniform and metric kinds
/// construct theirs; the table kind uses the explicit step functions).
Retraction resolve_retraction(const InstanceFile& instance, const std::string& name);

/// FNV-1a 64-bit content digest, e.g. "fnv1a64:cbf29ce484222325".
std::string content_digest(std::string_view bytes);

}  // namespace hmfree
