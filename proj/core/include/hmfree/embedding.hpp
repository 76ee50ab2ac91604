#pragma once

#include "hmfree/algebra.hpp"
#include "hmfree/hm.hpp"
#include "hmfree/rational.hpp"
#include "hmfree/report.hpp"
#include "hmfree/rewrite.hpp"
#include "hmfree/stepfn.hpp"
#include "hmfree/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmfree {

/// A step-function-valued retraction: every ambient point maps to a step
/// function over the subspace, and subspace points map to their own
/// constant function. Construction checks totality and the subset
/// relation; the extension property is checked by verify_retract.
struct Retraction {
  std::vector<Element> ambient;   // sorted
  std::vector<Element> subspace;  // sorted, subset of ambient
  std::map<Element, StepFn<Element>> table;

  Retraction(std::vector<Element> ambient_points, std::vector<Element> subspace_points,
             std::map<Element, StepFn<Element>> mapping);

  const StepFn<Element>& operator()(const Element& y) const;

  bool operator==(const Retraction& other) const = default;
};

/// Exhaustively checks the extension property (subspace points map to their
/// constants) and that every step function only takes subspace values.
bool verify_retract(const Retraction& r);

/// Points of the subspace map to constants; every other ambient point maps
/// to the step function splitting [0,1) into equal pieces, one per
/// subspace element in canonical order.
Retraction build_retraction_uniform(const std::vector<Element>& subspace,
                                    const std::vector<Element>& ambient);

/// Symmetric rational metric on a finite point set, with zero diagonal and
/// the triangle inequality (all validated).
class MetricTable {
public:
  MetricTable(std::vector<Element> points,
              std::map<std::pair<Element, Element>, Rational> distances);

  const std::vector<Element>& points() const { return points_; }
  const Rational& distance(const Element& a, const Element& b) const;

  bool operator==(const MetricTable& other) const = default;

private:
  std::vector<Element> points_;
  std::map<std::pair<Element, Element>, Rational> distances_;
};

/// Ambient points in the subspace map to their constants; any other point
/// maps to the equal split over its nearest subspace tier (all points at
/// minimal distance), in canonical order.
Retraction build_retraction_metric(const MetricTable& metric,
                                   const std::vector<Element>& subspace);

struct Lemma1Result {
  bool f_injective = false;
  bool composite_injective = false;
  /// True when the composite is injective, i.e. the implication
  /// "composite injective => f injective" actually fired (not vacuous).
  bool implication_active = false;
};

/// Set-level injectivity transfer: if g∘f is injective then so is f.
/// Returns f's injectivity and whether the implication was active on this
/// pair; throws if the maps do not compose.
Lemma1Result lemma1_injectivity(const CarrierMap& f, const CarrierMap& g);

/// Outcome of the end-to-end embedding pipeline. Serializes to
/// {"terms_checked", "retract", "identities": {"square_v", "main"},
///  "injectivity": {"domain_classes", "image_classes", "injective"}}.
struct PipelineReport {
  std::size_t terms_checked = 0;
  bool retract_ok = false;
  bool square_v_ok = false;  // relabel-then-retract equals embed, as terms
  bool main_ok = false;      // h after retract-substitution equals the constant embedding
  std::size_t domain_classes = 0;
  std::size_t image_classes = 0;
  bool injective = false;
  std::vector<CheckFailure> failures;

  bool ok() const { return retract_ok && square_v_ok && main_ok && injective; }
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// For every term over the subspace up to `depth`:
///   (i)   relabels into the ambient set,
///   (ii)  substitutes each generator's retraction step function,
///   (iii) pushes through the canonical homomorphism,
///   (iv)  compares against the constant step function at the term's
///         normal form ("main"),
///   (v)   separately compares the substituted term against the direct
///         constant-embedding substitution ("square_v"),
///   (vi)  collects normal-form classes before and after relabeling and
///         concludes injectivity via the set-level lemma.
PipelineReport theorem2_pipeline(const Signature& signature, const GeneratorSet& subspace,
                                 const GeneratorSet& ambient, const Retraction& retraction,
                                 int depth,
                                 const std::optional<RewriteSystem>& rewrites = std::nullopt);

}  // namespace hmfree
