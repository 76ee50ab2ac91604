#pragma once

#include "hmfree/error.hpp"
#include "hmfree/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmfree {

inline void check_unit_interval(const Rational& a, const Rational& b) {
  if (a < 0 || b > 1 || !(a < b))
    throw ValidationError("interval must satisfy 0 <= a < b <= 1");
}

/// Piecewise-constant function on [0,1) with exact rational breakpoints
/// 0 = a_0 < a_1 < ... < a_k = 1 and value_i held on [a_{i-1}, a_i).
/// Always stored normalized (adjacent equal values merged), so structural
/// equality decides function equality. The value universe is any
/// equality-comparable type: carrier elements, terms, tuples.
template <class V>
class StepFn {
public:
  /// Validates and normalizes. Adjacent duplicate values are allowed on
  /// input and merged. Throws ValidationError on wrong endpoints,
  /// non-monotone breakpoints or a length mismatch.
  StepFn(std::vector<Rational> breakpoints, std::vector<V> values)
      : breaks_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.empty() || breaks_.size() != values_.size() + 1)
      throw ValidationError("step function needs k+1 breakpoints for k values");
    if (breaks_.front() != 0 || breaks_.back() != 1)
      throw ValidationError("step function breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i - 1] < breaks_[i]))
        throw ValidationError("step function breakpoints must be strictly increasing");
    merge_equal_neighbors();
  }

  static StepFn constant(V value) {
    return StepFn({Rational(0), Rational(1)}, {std::move(value)});
  }

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<V>& values() const { return values_; }
  std::size_t piece_count() const { return values_.size(); }

  /// Value of the piece whose half-open interval [a_{i-1}, a_i) contains t.
  const V& value_at(const Rational& t) const {
    if (t < 0 || t >= 1) throw ValidationError("value_at argument outside [0,1)");
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
  }

  /// True iff the function takes a single value on all of [a, b).
  bool constant_on(const Rational& a, const Rational& b) const {
    check_unit_interval(a, b);
    const V& first = value_at(a);
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (breaks_[i + 1] <= a || breaks_[i] >= b) continue;
      if (!(values_[i] == first)) return false;
    }
    return true;
  }

  bool operator==(const StepFn& other) const {
    return breaks_ == other.breaks_ && values_ == other.values_;
  }

private:
  void merge_equal_neighbors() {
    std::vector<Rational> breaks;
    std::vector<V> values;
    breaks.push_back(breaks_.front());
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!values.empty() && values.back() == values_[i]) {
        breaks.back() = breaks_[i + 1];  // extend the previous piece
      } else {
        values.push_back(values_[i]);
        breaks.push_back(breaks_[i + 1]);
      }
    }
    breaks_ = std::move(breaks);
    values_ = std::move(values);
  }

  std::vector<Rational> breaks_;
  std::vector<V> values_;
};

/// Composes a value map with the function piecewise, then renormalizes
/// (pieces merge wherever the map collapses values).
template <class V, class Fn>
auto pointwise_map(const Fn& fn, const StepFn<V>& f)
    -> StepFn<std::decay_t<decltype(fn(std::declval<const V&>()))>> {
  std::vector<std::decay_t<decltype(fn(std::declval<const V&>()))>> values;
  values.reserve(f.values().size());
  for (const auto& v : f.values()) values.push_back(fn(v));
  return {f.breakpoints(), std::move(values)};
}

/// Common refinement: breakpoints are the sorted union of all inputs',
/// the value on each refined piece is the tuple of the inputs' values
/// there; the result is normalized.
template <class V>
StepFn<std::vector<V>> zip_many(const std::vector<StepFn<V>>& fns) {
  if (fns.empty()) throw ValidationError("zip of an empty step-function sequence");
  std::vector<Rational> merged;
  for (const auto& fn : fns)
    merged.insert(merged.end(), fn.breakpoints().begin(), fn.breakpoints().end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<std::vector<V>> values;
  values.reserve(merged.size() - 1);
  for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
    std::vector<V> tuple;
    tuple.reserve(fns.size());
    for (const auto& fn : fns) tuple.push_back(fn.value_at(merged[i]));
    values.push_back(std::move(tuple));
  }
  return {std::move(merged), std::move(values)};
}

/// Exact Lebesgue measure of { t in [a,b) : f(t) is not in `allowed` },
/// computed by interval intersection. Requires 0 <= a < b <= 1.
template <class V>
Rational measure_where(const StepFn<V>& fn, const Rational& a, const Rational& b,
                       const std::vector<V>& allowed) {
  check_unit_interval(a, b);
  auto in_allowed = [&](const V& v) {
    return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
  };
  Rational total(0);
  for (std::size_t i = 0; i < fn.values().size(); ++i) {
    if (in_allowed(fn.values()[i])) continue;
    const Rational lo = std::max(fn.breakpoints()[i], a);
    const Rational hi = std::min(fn.breakpoints()[i + 1], b);
    if (lo < hi) total += hi - lo;
  }
  return total;
}

/// Membership in the subbasic neighborhood N(a, b, allowed, eps) of `base`:
/// the measure of { t in [a,b) : g(t) outside allowed } is strictly below
/// eps. Preconditions — base constant on [a,b) with its value in `allowed`,
/// and eps > 0 — are violations reported by ValidationError, distinct from
/// a false result.
template <class V>
bool in_neighborhood(const StepFn<V>& g, const Rational& a, const Rational& b,
                     const std::vector<V>& allowed, const Rational& eps,
                     const StepFn<V>& base) {
  if (!(eps > 0)) throw ValidationError("neighborhood epsilon must be positive");
  if (!base.constant_on(a, b))
    throw ValidationError("neighborhood base function is not constant on [a,b)");
  const V& base_value = base.value_at(a);
  if (std::find(allowed.begin(), allowed.end(), base_value) == allowed.end())
    throw ValidationError("neighborhood value set does not contain the base value");
  return measure_where(g, a, b, allowed) < eps;
}

/// Text form "[0,1/2)->x; [1/2,1)->y" for string-valued step functions.
std::string to_text(const StepFn<std::string>& fn);
StepFn<std::string> parse_stepfn(std::string_view text);

/// Text form with a caller-supplied value printer (used for term-valued
/// step functions in reports).
template <class V, class Printer>
std::string stepfn_text(const StepFn<V>& fn, const Printer& print_value) {
  std::string out;
  for (std::size_t i = 0; i < fn.values().size(); ++i) {
    if (i > 0) out += "; ";
    out += "[" + to_string(fn.breakpoints()[i]) + "," +
           to_string(fn.breakpoints()[i + 1]) + ")->" + print_value(fn.values()[i]);
  }
  return out;
}

}  // namespace hmfree
