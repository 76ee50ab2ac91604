#include "hmfree/embedding.hpp"

#include "hmfree/error.hpp"
#include "hmfree/parallel.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hmfree {
namespace {

std::vector<Element> sorted_unique_elements(std::vector<Element> xs, const char* what) {
  std::sort(xs.begin(), xs.end());
  auto dup = std::adjacent_find(xs.begin(), xs.end());
  if (dup != xs.end())
    throw ValidationError(std::string(what) + " contains duplicate '" + *dup + "'");
  return xs;
}

}  // namespace

Retraction::Retraction(std::vector<Element> ambient_points,
                       std::vector<Element> subspace_points,
                       std::map<Element, StepFn<Element>> mapping)
    : ambient(sorted_unique_elements(std::move(ambient_points), "ambient set")),
      subspace(sorted_unique_elements(std::move(subspace_points), "subspace")),
      table(std::move(mapping)) {
  if (subspace.empty()) throw ValidationError("subspace must be nonempty");
  for (const auto& x : subspace)
    if (!std::binary_search(ambient.begin(), ambient.end(), x))
      throw ValidationError("subspace element '" + x + "' is not in the ambient set");
  for (const auto& y : ambient)
    if (table.find(y) == table.end())
      throw ValidationError("retraction not total: no step function for '" + y + "'");
  if (table.size() != ambient.size())
    throw ValidationError("retraction table mentions points outside the ambient set");
}

const StepFn<Element>& Retraction::operator()(const Element& y) const {
  const auto it = table.find(y);
  if (it == table.end()) throw ValidationError("point '" + y + "' not in the ambient set");
  return it->second;
}

bool verify_retract(const Retraction& r) {
  for (const auto& [y, fn] : r.table)
    for (const auto& v : fn.values())
      if (!std::binary_search(r.subspace.begin(), r.subspace.end(), v)) return false;
  for (const auto& x : r.subspace)
    if (!(r(x) == hm_embed(x))) return false;
  return true;
}

Retraction build_retraction_uniform(const std::vector<Element>& subspace,
                                    const std::vector<Element>& ambient) {
  const auto sub = sorted_unique_elements(subspace, "subspace");
  if (sub.empty()) throw ValidationError("subspace must be nonempty");
  std::map<Element, StepFn<Element>> table;
  const auto n = static_cast<long long>(sub.size());
  for (const auto& y : ambient) {
    if (std::binary_search(sub.begin(), sub.end(), y)) {
      table.emplace(y, hm_embed(y));
      continue;
    }
    std::vector<Rational> breaks;
    breaks.reserve(sub.size() + 1);
    for (long long k = 0; k <= n; ++k) breaks.push_back(rational(k, n));
    table.emplace(y, StepFn<Element>(std::move(breaks), sub));
  }
  return Retraction(ambient, sub, std::move(table));
}

MetricTable::MetricTable(std::vector<Element> points,
                         std::map<std::pair<Element, Element>, Rational> distances)
    : points_(sorted_unique_elements(std::move(points), "metric point set")),
      distances_(std::move(distances)) {
  for (const auto& [pair, d] : distances_) {
    const auto& [a, b] = pair;
    if (!std::binary_search(points_.begin(), points_.end(), a) ||
        !std::binary_search(points_.begin(), points_.end(), b))
      throw ValidationError("metric entry for unknown points (" + a + "," + b + ")");
  }
  for (const auto& a : points_) {
    for (const auto& b : points_) {
      const auto it = distances_.find({a, b});
      if (it == distances_.end())
        throw ValidationError("metric table missing entry (" + a + "," + b + ")");
      if (a == b && it->second != 0)
        throw ValidationError("metric diagonal entry (" + a + "," + a + ") must be 0");
      const auto mirror = distances_.find({b, a});
      if (mirror == distances_.end() || mirror->second != it->second)
        throw ValidationError("metric table not symmetric at (" + a + "," + b + ")");
    }
  }
  for (const auto& a : points_)
    for (const auto& b : points_)
      for (const auto& c : points_)
        if (distance(a, c) > distance(a, b) + distance(b, c))
          throw ValidationError("triangle inequality fails at (" + a + "," + b + "," + c +
                                ")");
}

const Rational& MetricTable::distance(const Element& a, const Element& b) const {
  const auto it = distances_.find({a, b});
  if (it == distances_.end())
    throw ValidationError("no metric entry for (" + a + "," + b + ")");
  return it->second;
}

Retraction build_retraction_metric(const MetricTable& metric,
                                   const std::vector<Element>& subspace) {
  const auto sub = sorted_unique_elements(subspace, "subspace");
  if (sub.empty()) throw ValidationError("subspace must be nonempty");
  for (const auto& x : sub)
    if (!std::binary_search(metric.points().begin(), metric.points().end(), x))
      throw ValidationError("subspace element '" + x + "' has no metric row");

  std::map<Element, StepFn<Element>> table;
  for (const auto& y : metric.points()) {
    if (std::binary_search(sub.begin(), sub.end(), y)) {
      table.emplace(y, hm_embed(y));
      continue;
    }
    // Nearest tier: subspace points at minimal distance, canonical order.
    Rational best = metric.distance(y, sub.front());
    for (const auto& x : sub) best = std::min(best, metric.distance(y, x));
    std::vector<Element> tier;
    for (const auto& x : sub)
      if (metric.distance(y, x) == best) tier.push_back(x);

    const auto n = static_cast<long long>(tier.size());
    std::vector<Rational> breaks;
    breaks.reserve(tier.size() + 1);
    for (long long k = 0; k <= n; ++k) breaks.push_back(rational(k, n));
    table.emplace(y, StepFn<Element>(std::move(breaks), std::move(tier)));
  }
  return Retraction(metric.points(), sub, std::move(table));
}

Lemma1Result lemma1_injectivity(const CarrierMap& f, const CarrierMap& g) {
  for (const auto& [x, y] : f.table())
    if (std::find(g.domain().begin(), g.domain().end(), y) == g.domain().end())
      throw ValidationError("maps do not compose: '" + y + "' missing from the outer domain");

  Lemma1Result result;
  result.f_injective = f.is_injective();
  result.composite_injective = compose(g, f).is_injective();
  result.implication_active = result.composite_injective;
  if (result.composite_injective && !result.f_injective)
    throw Error("injectivity transfer violated: composite injective but inner map is not");
  return result;
}

nlohmann::json PipelineReport::to_json() const {
  auto status = [](bool ok) { return ok ? "pass" : "fail"; };
  nlohmann::json fails = nlohmann::json::array();
  for (const auto& f : failures)
    fails.push_back({{"witness", f.witness}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"terms_checked", terms_checked},
          {"retract", status(retract_ok)},
          {"identities", {{"square_v", status(square_v_ok)}, {"main", status(main_ok)}}},
          {"injectivity",
           {{"domain_classes", domain_classes},
            {"image_classes", image_classes},
            {"injective", injective}}},
          {"failures", std::move(fails)}};
}

std::string PipelineReport::to_text() const {
  auto status = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::ostringstream out;
  out << "terms checked: " << terms_checked << "\n"
      << "retract extension property: " << status(retract_ok) << "\n"
      << "square (relabel+retract = embed): " << status(square_v_ok) << "\n"
      << "main identity (h after retract = constant embedding): " << status(main_ok) << "\n"
      << "normal-form classes: " << domain_classes << " -> " << image_classes
      << (injective ? " (injective)" : " (NOT injective)") << "\n";
  if (!failures.empty()) {
    const auto& f = failures.front();
    out << "first failure: " << f.witness << "\n  lhs: " << f.lhs << "\n  rhs: " << f.rhs
        << "\n";
  }
  return out.str();
}

PipelineReport theorem2_pipeline(const Signature& signature, const GeneratorSet& subspace,
                                 const GeneratorSet& ambient, const Retraction& retraction,
                                 int depth, const std::optional<RewriteSystem>& rewrites) {
  if (!subspace.subset_of(ambient))
    throw ValidationError("subspace generators must be contained in the ambient set");
  if (retraction.subspace != subspace.elements() ||
      retraction.ambient != ambient.elements())
    throw ValidationError("retraction sets differ from the given generator sets");

  PipelineReport report;
  report.retract_ok = verify_retract(retraction);
  if (!report.retract_ok) {
    report.failures.push_back(
        {"retract verification", "extension property or value containment violated", ""});
    return report;
  }

  const std::vector<Term> terms = enumerate_terms(signature, subspace, depth);
  const HomToHMFree h = build_h(subspace, rewrites);

  struct PerTerm {
    std::optional<CheckFailure> square_v;
    std::optional<CheckFailure> main;
    Term nf_domain;
    Term nf_image;
    PerTerm() : nf_domain(Term::leaf("")), nf_image(Term::leaf("")) {}
  };

  const auto rows = parallel_map(terms.size(), [&](std::size_t i) {
    const Term& t = terms[i];
    PerTerm row;

    // (i) relabel into the ambient set (inclusion: names are unchanged).
    const Term relabeled = t;
    // (ii) substitute each generator's retraction step function.
    const HMTerm substituted =
        map_leaves(relabeled, [&](const Element& y) { return retraction(y); });
    // (v) the same term with generators embedded directly as constants.
    const HMTerm embedded =
        map_leaves(t, [](const Element& x) { return hm_embed<Element>(x); });
    if (!(substituted == embedded))
      row.square_v = CheckFailure{to_text(t), to_text(substituted), to_text(embedded)};

    // (iii)+(iv) canonical homomorphism vs constant embedding of the normal form.
    const TermStepFn via_h = h(substituted);
    row.nf_domain = rewrites ? normalize(t, *rewrites) : t;
    const TermStepFn direct = hm_embed(row.nf_domain);
    if (!(via_h == direct))
      row.main = CheckFailure{to_text(t), to_text(via_h), to_text(direct)};

    // (vi) normal form of the relabeled term in the ambient quotient.
    row.nf_image = rewrites ? normalize(relabeled, *rewrites) : relabeled;
    return row;
  });

  report.terms_checked = terms.size();
  report.square_v_ok = true;
  report.main_ok = true;

  std::map<Term, Term> class_map;         // domain normal form -> image normal form
  std::map<Term, std::string> image_of;   // image normal form -> h-image key
  bool class_map_consistent = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.square_v) {
      report.square_v_ok = false;
      report.failures.push_back(*row.square_v);
    }
    if (row.main) {
      report.main_ok = false;
      report.failures.push_back(*row.main);
    }
    const auto [it, inserted] = class_map.emplace(row.nf_domain, row.nf_image);
    if (!inserted && !(it->second == row.nf_image)) {
      class_map_consistent = false;
      report.failures.push_back({"class map: " + to_text(row.nf_domain),
                                 to_text(it->second), to_text(row.nf_image)});
    }
  }

  // Injectivity of the induced map on normal-form classes, via the
  // injectivity-transfer lemma: compose with the constant embedding of the
  // image classes, which the main identity shows to be the constant
  // embedding of the domain classes.
  std::vector<Element> domain_names, image_names;
  std::map<Element, Element> f_table;
  std::set<Element> image_name_set;
  for (const auto& [nf_x, nf_y] : class_map) {
    domain_names.push_back(to_text(nf_x));
    image_name_set.insert(to_text(nf_y));
    f_table.emplace(to_text(nf_x), to_text(nf_y));
  }
  image_names.assign(image_name_set.begin(), image_name_set.end());

  report.domain_classes = class_map.size();
  report.image_classes = image_names.size();

  if (class_map_consistent && !class_map.empty()) {
    std::map<Element, Element> g_table;
    std::set<Element> g_codomain;
    for (const auto& [nf_x, nf_y] : class_map) {
      const HMTerm substituted =
          map_leaves(nf_y, [&](const Element& y) { return retraction(y); });
      const std::string key = to_text(h(substituted));
      g_table.emplace(to_text(nf_y), key);
      g_codomain.insert(key);
    }
    const CarrierMap class_fn(domain_names, image_names, std::move(f_table));
    const CarrierMap g(image_names,
                       std::vector<Element>(g_codomain.begin(), g_codomain.end()),
                       std::move(g_table));
    const Lemma1Result lemma = lemma1_injectivity(class_fn, g);
    report.injective = lemma.f_injective;
  } else {
    report.injective = false;
  }
  return report;
}

}  // namespace hmfree
