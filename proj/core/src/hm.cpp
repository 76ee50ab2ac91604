#include "hmfree/hm.hpp"

#include "hmfree/error.hpp"
#include "hmfree/parallel.hpp"

#include <random>
#include <sstream>

namespace hmfree {

StepFn<Element> lift_op(const Algebra& algebra, int arity, const std::string& label,
                        const std::vector<StepFn<Element>>& args) {
  if (!algebra.signature().has_op(arity, label))
    throw ValidationError("unknown operation '" + label + "' at arity " +
                          std::to_string(arity));
  if (static_cast<int>(args.size()) != arity)
    throw ValidationError("arity mismatch lifting '" + label + "'");
  if (arity == 0) return hm_embed(algebra.apply(0, label, {}));
  const StepFn<Tuple> zipped = zip_many(args);
  return pointwise_map(
      [&](const Tuple& tuple) -> Element { return algebra.apply(arity, label, tuple); },
      zipped);
}

CheckReport compare_pointwise_embeddings(
    const std::function<StepFn<Element>(const Element&)>& lhs,
    const std::function<StepFn<Element>(const Element&)>& rhs,
    const std::vector<Element>& sample) {
  CheckReport report;
  for (const auto& x : sample) {
    ++report.checked;
    const StepFn<Element> left = lhs(x);
    const StepFn<Element> right = rhs(x);
    if (!(left == right)) report.record(x, to_text(left), to_text(right));
  }
  return report;
}

CheckReport check_naturality_square(const CarrierMap& f, const std::vector<Element>& sample) {
  return compare_pointwise_embeddings(
      [&](const Element& x) {
        return pointwise_map([&](const Element& v) -> Element { return f(v); },
                             hm_embed(x));
      },
      [&](const Element& x) { return hm_embed(f(x)); }, sample);
}

CheckReport check_hm_embed_homomorphism(const Algebra& algebra) {
  CheckReport report;
  for (const auto& [arity, labels] : algebra.signature().params()) {
    for (const auto& label : labels) {
      for (const auto& args : all_tuples(algebra.carrier(), arity)) {
        ++report.checked;
        std::vector<StepFn<Element>> constants;
        constants.reserve(args.size());
        for (const auto& x : args) constants.push_back(hm_embed(x));
        const StepFn<Element> lifted = lift_op(algebra, arity, label, constants);
        const StepFn<Element> embedded = hm_embed(algebra.apply(arity, label, args));
        if (!(lifted == embedded)) {
          std::ostringstream witness;
          witness << label << "(";
          for (std::size_t i = 0; i < args.size(); ++i) {
            if (i > 0) witness << ",";
            witness << args[i];
          }
          witness << ")";
          report.record(witness.str(), to_text(lifted), to_text(embedded));
        }
      }
    }
  }
  return report;
}

std::string to_text(const TermStepFn& fn) {
  return stepfn_text(fn, [](const Term& t) { return to_text(t); });
}

std::string to_text(const HMTerm& t) {
  if (t.is_leaf()) return "<" + to_text(t.leaf_value()) + ">";
  std::string out = t.label() + "(";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i > 0) out += ", ";
    out += to_text(t.children()[i]);
  }
  out += ")";
  return out;
}

HomToHMFree::HomToHMFree(GeneratorSet base, std::optional<RewriteSystem> rewrites)
    : base_(std::move(base)), rewrites_(std::move(rewrites)) {}

Term HomToHMFree::normal_form(Term t) const {
  if (!rewrites_) return t;
  return normalize(t, *rewrites_);
}

TermStepFn HomToHMFree::operator()(const HMTerm& t) const {
  if (t.is_leaf()) {
    const StepFn<Element>& generator_fn = t.leaf_value();
    for (const auto& v : generator_fn.values())
      if (!base_.contains(v))
        throw ValidationError("step-function generator takes value '" + v +
                              "' outside the generator set");
    return pointwise_map(
        [&](const Element& x) -> Term { return normal_form(Term::leaf(x)); },
        generator_fn);
  }
  if (t.arity() == 0) return TermStepFn::constant(normal_form(Term::node(t.label(), {})));

  std::vector<TermStepFn> images;
  images.reserve(t.children().size());
  for (const auto& child : t.children()) images.push_back((*this)(child));
  const StepFn<std::vector<Term>> zipped = zip_many(images);
  return pointwise_map(
      [&](const std::vector<Term>& tuple) -> Term {
        return normal_form(Term::node(t.label(), tuple));
      },
      zipped);
}

HomToHMFree build_h(const GeneratorSet& base, std::optional<RewriteSystem> rewrites) {
  return HomToHMFree(base, std::move(rewrites));
}

CheckReport check_h_identity(const Signature& signature, const GeneratorSet& generators,
                             int depth, const std::optional<RewriteSystem>& rewrites) {
  const std::vector<Term> terms = enumerate_terms(signature, generators, depth);
  const HomToHMFree h = build_h(generators, rewrites);

  const auto failures = parallel_map(terms.size(), [&](std::size_t i) {
    const Term& t = terms[i];
    const HMTerm embedded =
        map_leaves(t, [](const Element& x) { return hm_embed<Element>(x); });
    const TermStepFn via_h = h(embedded);
    const Term nf = rewrites ? normalize(t, *rewrites) : t;
    const TermStepFn direct = hm_embed(nf);
    std::optional<CheckFailure> failure;
    if (!(via_h == direct))
      failure = CheckFailure{to_text(t), to_text(via_h), to_text(direct)};
    return failure;
  });

  CheckReport report;
  report.checked = terms.size();
  for (const auto& failure : failures)
    if (failure) report.failures.push_back(*failure);
  return report;
}

SampledHMValued::SampledHMValued(Algebra base, std::vector<StepFn<Element>> members)
    : base_(std::move(base)), members_(std::move(members)) {
  for (const auto& fn : members_)
    for (const auto& v : fn.values())
      if (!base_.has_element(v))
        throw ValidationError("sample step function takes value '" + v +
                              "' outside the base carrier");
}

SampledHMValued SampledHMValued::of(const Algebra& base,
                                    std::vector<StepFn<Element>> members) {
  return SampledHMValued(base, std::move(members));
}

SampledHMValued SampledHMValued::build(const Algebra& base, std::size_t target_size,
                                       std::size_t max_pieces, int max_denominator,
                                       std::size_t closure_rounds) {
  if (max_pieces < 1) throw ValidationError("sample needs max_pieces >= 1");
  if (max_denominator < 2) throw ValidationError("sample needs max_denominator >= 2");

  // Breakpoint grid: k/d for d <= max_denominator, 0 < k < d.
  std::vector<Rational> grid;
  for (int d = 2; d <= max_denominator; ++d)
    for (int k = 1; k < d; ++k) grid.push_back(rational(k, d));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<StepFn<Element>> members;
  auto add = [&](StepFn<Element> fn) {
    for (const auto& m : members)
      if (m == fn) return;
    members.push_back(std::move(fn));
  };

  // Constants first: the sample's values exhaust the carrier.
  for (const auto& x : base.carrier()) add(hm_embed(x));

  std::mt19937 rng(0x5eed);
  const std::size_t carrier_size = base.carrier().size();
  std::size_t attempts = 0;
  while (members.size() < target_size && attempts < 64 * target_size) {
    ++attempts;
    const std::size_t pieces =
        2 + (max_pieces > 2 ? rng() % (max_pieces - 1) : 0);
    std::vector<Rational> breaks;
    breaks.push_back(Rational(0));
    std::vector<std::size_t> picks;
    while (picks.size() < pieces - 1) {
      const std::size_t i = rng() % grid.size();
      if (std::find(picks.begin(), picks.end(), i) == picks.end()) picks.push_back(i);
    }
    std::sort(picks.begin(), picks.end());
    for (std::size_t i : picks) breaks.push_back(grid[i]);
    breaks.push_back(Rational(1));

    std::vector<Element> values;
    values.reserve(pieces);
    for (std::size_t i = 0; i < pieces; ++i)
      values.push_back(base.carrier()[rng() % carrier_size]);
    add(StepFn<Element>(std::move(breaks), std::move(values)));
  }

  // Bounded closure under the lifted operations.
  for (std::size_t round = 0; round < closure_rounds; ++round) {
    const std::vector<StepFn<Element>> snapshot = members;
    for (const auto& [arity, labels] : base.signature().params()) {
      if (arity == 0) continue;
      for (const auto& label : labels) {
        for (std::size_t start = 0; start + arity <= snapshot.size(); ++start) {
          if (members.size() >= 2 * target_size) break;
          std::vector<StepFn<Element>> args(snapshot.begin() + start,
                                            snapshot.begin() + start + arity);
          add(lift_op(base, arity, label, args));
        }
      }
    }
  }
  return SampledHMValued(base, std::move(members));
}

namespace {

StepFn<Element> eval_in_lifted_algebra(const Term& t, const Algebra& algebra,
                                       const RewriteRule& rule,
                                       const std::map<std::string, StepFn<Element>>& env) {
  if (t.is_leaf()) {
    const auto it = env.find(t.leaf_value());
    if (it == env.end())
      throw ValidationError("leaf '" + t.leaf_value() + "' is not an assigned variable");
    return it->second;
  }
  std::vector<StepFn<Element>> args;
  args.reserve(t.children().size());
  for (const auto& child : t.children())
    args.push_back(eval_in_lifted_algebra(child, algebra, rule, env));
  return lift_op(algebra, t.arity(), t.label(), args);
}

}  // namespace

CheckReport check_hm_preserves_identities(const Algebra& algebra, const RewriteRule& rule,
                                          const SampledHMValued& sample) {
  CheckReport report;
  if (const auto violation = find_identity_violation(algebra, rule)) {
    std::ostringstream witness;
    witness << "base algebra violates the rule at ";
    for (const auto& [var, value] : *violation) witness << var << "=" << value << " ";
    FreeExtension eval(*violation, algebra);
    report.record(witness.str(), eval(rule.lhs()), eval(rule.rhs()));
    return report;
  }

  const auto& members = sample.members();
  const auto& vars = rule.variables();
  if (members.empty()) return report;

  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    std::map<std::string, StepFn<Element>> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env.emplace(vars[i], members[idx[i]]);
    ++report.checked;
    const StepFn<Element> lhs = eval_in_lifted_algebra(rule.lhs(), algebra, rule, env);
    const StepFn<Element> rhs = eval_in_lifted_algebra(rule.rhs(), algebra, rule, env);
    if (!(lhs == rhs)) {
      std::ostringstream witness;
      for (std::size_t i = 0; i < vars.size(); ++i)
        witness << vars[i] << "=" << to_text(members[idx[i]]) << "; ";
      report.record(witness.str(), to_text(lhs), to_text(rhs));
    }

    if (vars.empty()) break;
    std::size_t pos = idx.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < members.size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return report;
}

}  // namespace hmfree
