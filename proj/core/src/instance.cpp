#include "hmfree/instance.hpp"

#include "hmfree/error.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace hmfree {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw ValidationError("instance schema: " + what);
}

std::vector<std::string> string_array(const json& doc, const std::string& where) {
  if (!doc.is_array()) schema_error(where + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(doc.size());
  for (const auto& item : doc) {
    if (!item.is_string()) schema_error(where + " must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

// Nested interpretation table for one label: objects keyed by carrier
// element, `arity` levels deep, with element strings at the leaves.
void flatten_ops(const json& doc, int arity, const std::string& label, Tuple& prefix,
                 std::map<Algebra::OpKey, Element>& out) {
  if (arity == 0) {
    if (!doc.is_string()) schema_error("table leaf for '" + label + "' must be a string");
    out.emplace(Algebra::OpKey{label, prefix}, doc.get<std::string>());
    return;
  }
  if (!doc.is_object()) schema_error("table for '" + label + "' must nest objects");
  for (const auto& [key, value] : doc.items()) {
    prefix.push_back(key);
    flatten_ops(value, arity - 1, label, prefix, out);
    prefix.pop_back();
  }
}

json nest_ops(const Algebra& algebra, int arity, const std::string& label, Tuple& prefix) {
  if (arity == 0) return algebra.apply(static_cast<int>(prefix.size()) + arity, label, prefix);
  json out = json::object();
  for (const auto& x : algebra.carrier()) {
    prefix.push_back(x);
    out[x] = nest_ops(algebra, arity - 1, label, prefix);
    prefix.pop_back();
  }
  return out;
}

}  // namespace

json signature_to_json(const Signature& signature) {
  json out = json::object();
  for (const auto& [arity, labels] : signature.params())
    out[std::to_string(arity)] = labels;
  return out;
}

Signature signature_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("signature must be an object of arity -> labels");
  std::map<int, std::vector<std::string>> raw;
  for (const auto& [key, value] : doc.items()) {
    int arity = 0;
    try {
      arity = std::stoi(key);
    } catch (const std::exception&) {
      schema_error("signature arity '" + key + "' is not a number");
    }
    raw.emplace(arity, string_array(value, "signature labels"));
  }
  return Signature::from_params(raw);
}

json algebra_to_json(const Algebra& algebra) {
  json ops = json::object();
  std::map<std::string, int> label_arity;
  for (const auto& [arity, labels] : algebra.signature().params()) {
    for (const auto& label : labels) {
      if (label_arity.count(label))
        throw ValidationError("label '" + label +
                              "' appears at several arities; instance files need "
                              "arity-unique labels");
      label_arity.emplace(label, arity);
    }
  }
  for (const auto& [label, arity] : label_arity) {
    Tuple prefix;
    if (arity == 0) {
      ops[label] = algebra.apply(0, label, {});
    } else {
      json table = json::object();
      for (const auto& x : algebra.carrier()) {
        prefix.push_back(x);
        table[x] = nest_ops(algebra, arity - 1, label, prefix);
        prefix.pop_back();
      }
      ops[label] = std::move(table);
    }
  }
  return {{"carrier", algebra.carrier()}, {"ops", std::move(ops)}};
}

Algebra algebra_from_json(const json& doc, const Signature& signature) {
  if (!doc.is_object() || !doc.contains("carrier") || !doc.contains("ops"))
    schema_error("algebra needs 'carrier' and 'ops'");
  std::vector<Element> carrier = string_array(doc["carrier"], "algebra carrier");

  std::map<Algebra::OpKey, Element> ops;
  const json& optable = doc["ops"];
  if (!optable.is_object()) schema_error("algebra 'ops' must be an object");
  for (const auto& [arity, labels] : signature.params()) {
    for (const auto& label : labels) {
      if (!optable.contains(label)) schema_error("missing table for operation '" + label + "'");
      Tuple prefix;
      flatten_ops(optable[label], arity, label, prefix, ops);
    }
  }
  return Algebra(signature, std::move(carrier), std::move(ops));
}

json term_to_json(const Term& t) {
  if (t.is_leaf()) return {{"gen", t.leaf_value()}};
  json args = json::array();
  for (const auto& child : t.children()) args.push_back(term_to_json(child));
  return {{"op", t.label()}, {"args", std::move(args)}};
}

Term term_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("term must be an object");
  if (doc.contains("gen")) {
    if (!doc["gen"].is_string()) schema_error("term 'gen' must be a string");
    return Term::leaf(doc["gen"].get<std::string>());
  }
  if (!doc.contains("op") || !doc["op"].is_string())
    schema_error("term needs 'gen' or 'op'");
  std::vector<Term> children;
  if (doc.contains("args")) {
    if (!doc["args"].is_array()) schema_error("term 'args' must be an array");
    for (const auto& child : doc["args"]) children.push_back(term_from_json(child));
  }
  return Term::node(doc["op"].get<std::string>(), std::move(children));
}

json stepfn_to_json(const StepFn<Element>& fn) {
  json breaks = json::array();
  for (const auto& b : fn.breakpoints()) breaks.push_back(to_string(b));
  return {{"breaks", std::move(breaks)}, {"values", fn.values()}};
}

StepFn<Element> stepfn_from_json(const json& doc) {
  if (doc.is_string()) return parse_stepfn(doc.get<std::string>());
  if (!doc.is_object() || !doc.contains("breaks") || !doc.contains("values"))
    schema_error("step function must be a text form or {breaks, values}");
  std::vector<Rational> breaks;
  for (const auto& b : doc["breaks"]) {
    if (!b.is_string()) schema_error("step-function breakpoints must be rational strings");
    breaks.push_back(parse_rational(b.get<std::string>()));
  }
  return StepFn<Element>(std::move(breaks), string_array(doc["values"], "step-function values"));
}

json space_to_json(const FiniteSpace& space) {
  json opens = json::array();
  for (const auto& open : space.opens()) {
    json one = json::array();
    for (const auto& p : open) one.push_back(p);
    opens.push_back(std::move(one));
  }
  return {{"points", space.points()}, {"opens", std::move(opens)}};
}

FiniteSpace space_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("opens"))
    schema_error("space needs 'points' and 'opens'");
  std::vector<std::set<std::string>> opens;
  if (!doc["opens"].is_array()) schema_error("space 'opens' must be an array of arrays");
  for (const auto& open : doc["opens"]) {
    const auto points = string_array(open, "open set");
    opens.emplace_back(points.begin(), points.end());
  }
  return FiniteSpace(string_array(doc["points"], "space points"), opens);
}

namespace {

std::vector<Element> resolve_element_set(const InstanceFile& instance, const json& ref,
                                         const std::string& where) {
  if (ref.is_array()) return string_array(ref, where);
  if (!ref.is_string()) schema_error(where + " must be a name or an inline array");
  const std::string name = ref.get<std::string>();
  if (auto it = instance.algebras.find(name); it != instance.algebras.end())
    return it->second.carrier();
  if (auto it = instance.generators.find(name); it != instance.generators.end())
    return it->second.elements();
  schema_error(where + " references unknown name '" + name + "'");
}

MetricTable metric_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc.contains("distances"))
    schema_error("metric needs 'points' and 'distances'");
  const auto points = string_array(doc["points"], "metric points");
  std::map<std::pair<Element, Element>, Rational> distances;
  for (const auto& p : points) distances.emplace(std::make_pair(p, p), Rational(0));
  const json& rows = doc["distances"];
  if (!rows.is_object()) schema_error("metric 'distances' must nest objects");
  for (const auto& [a, row] : rows.items()) {
    if (!row.is_object()) schema_error("metric row for '" + a + "' must be an object");
    for (const auto& [b, d] : row.items()) {
      if (!d.is_string()) schema_error("metric distances must be rational strings");
      const Rational value = parse_rational(d.get<std::string>());
      const auto ab = std::make_pair(a, b);
      const auto ba = std::make_pair(b, a);
      if (auto it = distances.find(ab); it != distances.end() && it->second != value)
        schema_error("conflicting metric entries for (" + a + "," + b + ")");
      distances[ab] = value;
      distances[ba] = value;
    }
  }
  return MetricTable(points, std::move(distances));
}

json metric_to_json(const MetricTable& metric) {
  json rows = json::object();
  for (const auto& a : metric.points()) {
    json row = json::object();
    for (const auto& b : metric.points())
      if (a < b) row[b] = to_string(metric.distance(a, b));
    if (!row.empty()) rows[a] = std::move(row);
  }
  return {{"points", metric.points()}, {"distances", std::move(rows)}};
}

}  // namespace

InstanceFile parse_instance(const json& doc) {
  if (!doc.is_object()) schema_error("instance file must be a JSON object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer())
    schema_error("missing integer 'schema' version field");
  InstanceFile instance;
  instance.schema = doc["schema"].get<int>();
  if (instance.schema != 1)
    schema_error("unsupported schema version " + std::to_string(instance.schema));

  if (doc.contains("signature"))
    instance.signature = signature_from_json(doc["signature"]);

  if (doc.contains("generators")) {
    for (const auto& [name, value] : doc["generators"].items())
      instance.generators.emplace(name,
                                  GeneratorSet(string_array(value, "generators." + name)));
  }

  if (doc.contains("algebras")) {
    if (!instance.signature) schema_error("algebras need a signature section");
    for (const auto& [name, value] : doc["algebras"].items())
      instance.algebras.emplace(name, algebra_from_json(value, *instance.signature));
  }

  if (doc.contains("maps")) {
    for (const auto& [name, value] : doc["maps"].items()) {
      if (!value.is_object() || !value.contains("table"))
        schema_error("map '" + name + "' needs 'domain', 'codomain' and 'table'");
      const json& domain_ref = value.value("domain", json());
      const json& codomain_ref = value.value("codomain", json());
      const auto domain =
          resolve_element_set(instance, domain_ref, "maps." + name + ".domain");
      const auto codomain =
          resolve_element_set(instance, codomain_ref, "maps." + name + ".codomain");
      if (!value["table"].is_object())
        schema_error("map '" + name + "' table must be an object");
      std::map<Element, Element> table;
      for (const auto& [from, to] : value["table"].items()) {
        if (!to.is_string()) schema_error("map '" + name + "' images must be strings");
        table.emplace(from, to.get<std::string>());
      }
      MapSpec spec{domain_ref.is_string() ? domain_ref.get<std::string>() : "",
                   codomain_ref.is_string() ? codomain_ref.get<std::string>() : "",
                   CarrierMap(domain, codomain, std::move(table))};
      instance.maps.emplace(name, std::move(spec));
    }
  }

  if (doc.contains("rewrites")) {
    if (!instance.signature) schema_error("rewrites need a signature section");
    for (const auto& [name, value] : doc["rewrites"].items()) {
      if (!value.is_object() || !value.contains("rules"))
        schema_error("rewrite system '" + name + "' needs 'rules'");
      long fuel = kDefaultFuel;
      if (value.contains("fuel")) {
        if (!value["fuel"].is_number_integer())
          schema_error("rewrite system '" + name + "' fuel must be an integer");
        fuel = value["fuel"].get<long>();
      }
      std::vector<RewriteRule> rules;
      for (const auto& rule : value["rules"]) {
        if (!rule.is_string()) schema_error("rules must be rule strings");
        rules.push_back(parse_rule(rule.get<std::string>()));
      }
      instance.rewrites.emplace(name,
                                RewriteSystem(*instance.signature, std::move(rules), fuel));
    }
  }

  if (doc.contains("stepfns")) {
    for (const auto& [name, value] : doc["stepfns"].items())
      instance.stepfns.emplace(name, stepfn_from_json(value));
  }

  if (doc.contains("spaces")) {
    for (const auto& [name, value] : doc["spaces"].items())
      instance.spaces.emplace(name, space_from_json(value));
  }

  if (doc.contains("retractions")) {
    for (const auto& [name, value] : doc["retractions"].items()) {
      if (!value.is_object() || !value.contains("kind"))
        schema_error("retraction '" + name + "' needs a 'kind'");
      RetractionSpec spec;
      spec.kind = value["kind"].get<std::string>();
      spec.subspace = value.value("subspace", "");
      spec.ambient = value.value("ambient", "");
      if (spec.kind == "metric") {
        if (!value.contains("metric")) schema_error("metric retraction needs 'metric'");
        spec.metric = metric_from_json(value["metric"]);
      } else if (spec.kind == "table") {
        if (!value.contains("table")) schema_error("table retraction needs 'table'");
        for (const auto& [point, fn] : value["table"].items())
          spec.table.emplace(point, stepfn_from_json(fn));
      } else if (spec.kind != "uniform") {
        schema_error("retraction kind must be uniform, metric or table");
      }
      instance.retractions.emplace(name, std::move(spec));
    }
  }

  if (doc.contains("embeddings")) {
    for (const auto& [name, value] : doc["embeddings"].items()) {
      EmbeddingCase c;
      c.subspace = value.value("subspace", "");
      c.ambient = value.value("ambient", "");
      c.retraction = value.value("retraction", "");
      if (value.contains("rewrites") && !value["rewrites"].is_null())
        c.rewrites = value["rewrites"].get<std::string>();
      instance.embeddings.emplace(name, std::move(c));
    }
  }
  return instance;
}

json instance_to_json(const InstanceFile& instance) {
  json out = json::object();
  out["schema"] = instance.schema;
  if (instance.signature) out["signature"] = signature_to_json(*instance.signature);

  if (!instance.generators.empty()) {
    json section = json::object();
    for (const auto& [name, gens] : instance.generators) section[name] = gens.elements();
    out["generators"] = std::move(section);
  }
  if (!instance.algebras.empty()) {
    json section = json::object();
    for (const auto& [name, algebra] : instance.algebras)
      section[name] = algebra_to_json(algebra);
    out["algebras"] = std::move(section);
  }
  if (!instance.maps.empty()) {
    json section = json::object();
    for (const auto& [name, spec] : instance.maps) {
      json table = json::object();
      for (const auto& [from, to] : spec.map.table()) table[from] = to;
      json domain = spec.domain_ref.empty() ? json(spec.map.domain()) : json(spec.domain_ref);
      json codomain =
          spec.codomain_ref.empty() ? json(spec.map.codomain()) : json(spec.codomain_ref);
      section[name] = {{"domain", std::move(domain)},
                       {"codomain", std::move(codomain)},
                       {"table", std::move(table)}};
    }
    out["maps"] = std::move(section);
  }
  if (!instance.rewrites.empty()) {
    json section = json::object();
    for (const auto& [name, system] : instance.rewrites) {
      json rules = json::array();
      for (const auto& rule : system.rules()) rules.push_back(to_text(rule));
      section[name] = {{"fuel", system.fuel()}, {"rules", std::move(rules)}};
    }
    out["rewrites"] = std::move(section);
  }
  if (!instance.stepfns.empty()) {
    json section = json::object();
    for (const auto& [name, fn] : instance.stepfns) section[name] = stepfn_to_json(fn);
    out["stepfns"] = std::move(section);
  }
  if (!instance.spaces.empty()) {
    json section = json::object();
    for (const auto& [name, space] : instance.spaces) section[name] = space_to_json(space);
    out["spaces"] = std::move(section);
  }
  if (!instance.retractions.empty()) {
    json section = json::object();
    for (const auto& [name, spec] : instance.retractions) {
      json one = {{"kind", spec.kind},
                  {"subspace", spec.subspace},
                  {"ambient", spec.ambient}};
      if (spec.metric) one["metric"] = metric_to_json(*spec.metric);
      if (!spec.table.empty()) {
        json table = json::object();
        for (const auto& [point, fn] : spec.table) table[point] = stepfn_to_json(fn);
        one["table"] = std::move(table);
      }
      section[name] = std::move(one);
    }
    out["retractions"] = std::move(section);
  }
  if (!instance.embeddings.empty()) {
    json section = json::object();
    for (const auto& [name, c] : instance.embeddings) {
      json one = {{"subspace", c.subspace},
                  {"ambient", c.ambient},
                  {"retraction", c.retraction}};
      if (c.rewrites) one["rewrites"] = *c.rewrites;
      section[name] = std::move(one);
    }
    out["embeddings"] = std::move(section);
  }
  return out;
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ValidationError("instance file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_instance(doc);
}

namespace {

template <class Map>
const typename Map::mapped_type& resolve_named(const Map& map, const std::string& name,
                                               const char* what) {
  const auto it = map.find(name);
  if (it == map.end())
    throw ValidationError(std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

}  // namespace

const GeneratorSet& resolve_generators(const InstanceFile& instance, const std::string& name) {
  return resolve_named(instance.generators, name, "generator set");
}
const Algebra& resolve_algebra(const InstanceFile& instance, const std::string& name) {
  return resolve_named(instance.algebras, name, "algebra");
}
const MapSpec& resolve_map(const InstanceFile& instance, const std::string& name) {
  return resolve_named(instance.maps, name, "map");
}
const RewriteSystem& resolve_rewrites(const InstanceFile& instance, const std::string& name) {
  return resolve_named(instance.rewrites, name, "rewrite system");
}
const StepFn<Element>& resolve_stepfn(const InstanceFile& instance, const std::string& name) {
  return resolve_named(instance.stepfns, name, "step function");
}

Retraction resolve_retraction(const InstanceFile& instance, const std::string& name) {
  const RetractionSpec& spec = resolve_named(instance.retractions, name, "retraction");
  const GeneratorSet& subspace = resolve_generators(instance, spec.subspace);
  const GeneratorSet& ambient = resolve_generators(instance, spec.ambient);
  if (spec.kind == "uniform")
    return build_retraction_uniform(subspace.elements(), ambient.elements());
  if (spec.kind == "metric") {
    if (!spec.metric) throw ValidationError("metric retraction '" + name + "' lacks a metric");
    return build_retraction_metric(*spec.metric, subspace.elements());
  }
  return Retraction(ambient.elements(), subspace.elements(), spec.table);
}

std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace hmfree
