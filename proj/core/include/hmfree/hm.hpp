#pragma once

#include "hmfree/algebra.hpp"
#include "hmfree/report.hpp"
#include "hmfree/rewrite.hpp"
#include "hmfree/stepfn.hpp"
#include "hmfree/term.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hmfree {

/// Constant function at `value`: the canonical embedding of a point into
/// the step functions over its space.
template <class V>
StepFn<V> hm_embed(V value) {
  return StepFn<V>::constant(std::move(value));
}

/// The lifted operation on step functions over carrier(algebra): refine all
/// arguments to common breakpoints, apply the base operation pointwise,
/// normalize. Arity-0 operations yield the constant at the base constant.
StepFn<Element> lift_op(const Algebra& algebra, int arity, const std::string& label,
                        const std::vector<StepFn<Element>>& args);

/// Compares two value -> step-function maps on a finite sample and reports
/// every mismatch. This is the shared harness behind the naturality check;
/// negative tests drive it directly with a corrupted side.
CheckReport compare_pointwise_embeddings(
    const std::function<StepFn<Element>(const Element&)>& lhs,
    const std::function<StepFn<Element>(const Element&)>& rhs,
    const std::vector<Element>& sample);

/// Checks that mapping values and then embedding as constants equals
/// embedding and then mapping pointwise, for every sample value.
CheckReport check_naturality_square(const CarrierMap& f, const std::vector<Element>& sample);

/// Checks that the constant embedding is a homomorphism: for every
/// operation and every argument tuple, the lifted operation on constants
/// equals the constant at the base result. Exhaustive.
CheckReport check_hm_embed_homomorphism(const Algebra& algebra);

/// Term whose leaves are step functions over some generator carrier:
/// an element of the free algebra over the embedded space.
using HMTerm = BasicTerm<StepFn<Element>>;

/// Term-valued step function: an element of the step functions over the
/// free algebra.
using TermStepFn = StepFn<Term>;

std::string to_text(const TermStepFn& fn);
std::string to_text(const HMTerm& t);

/// The canonical homomorphism from terms-over-step-functions to
/// term-valued step functions: a leaf maps each of its values to a
/// generator leaf; a node zips its children's images and builds the
/// operation node pointwise. When a rewrite system is supplied every piece
/// is kept in normal form.
class HomToHMFree {
public:
  HomToHMFree(GeneratorSet base, std::optional<RewriteSystem> rewrites);

  TermStepFn operator()(const HMTerm& t) const;

  const GeneratorSet& base() const { return base_; }

private:
  Term normal_form(Term t) const;

  GeneratorSet base_;
  std::optional<RewriteSystem> rewrites_;
};

HomToHMFree build_h(const GeneratorSet& base,
                    std::optional<RewriteSystem> rewrites = std::nullopt);

/// For every term t of node-depth <= depth: embeds every generator leaf as
/// a constant step function, pushes the result through the canonical
/// homomorphism, and compares with the constant step function at t's
/// normal form. Both sides are computed by independent code paths.
CheckReport check_h_identity(const Signature& signature, const GeneratorSet& generators,
                             int depth,
                             const std::optional<RewriteSystem>& rewrites = std::nullopt);

/// Finite sample of step functions over a carrier, deterministically
/// generated: piece counts <= max_pieces, breakpoint denominators <=
/// max_denominator, piece values exhausting the carrier, optionally closed
/// under a bounded number of lifted-operation applications.
class SampledHMValued {
public:
  static SampledHMValued build(const Algebra& base, std::size_t target_size,
                               std::size_t max_pieces = 4, int max_denominator = 8,
                               std::size_t closure_rounds = 1);

  static SampledHMValued of(const Algebra& base, std::vector<StepFn<Element>> members);

  const Algebra& base() const { return base_; }
  const std::vector<StepFn<Element>>& members() const { return members_; }

private:
  SampledHMValued(Algebra base, std::vector<StepFn<Element>> members);

  Algebra base_;
  std::vector<StepFn<Element>> members_;
};

/// Verifies on a sample that the lifted algebra inherits an identity the
/// base algebra satisfies: first checks the rule on the base (a violation
/// is reported, not thrown), then evaluates both sides of the rule under
/// every assignment of sample step functions to the rule's variables.
CheckReport check_hm_preserves_identities(const Algebra& algebra, const RewriteRule& rule,
                                          const SampledHMValued& sample);

}  // namespace hmfree
