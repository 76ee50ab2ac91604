#pragma once

#include <hmfree/algebra.hpp>
#include <hmfree/rewrite.hpp>
#include <hmfree/signature.hpp>
#include <hmfree/stepfn.hpp>
#include <hmfree/term.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

namespace hmfree::test {

/// Signature with one binary operation m and one constant u.
inline Signature monoid_signature() {
  return Signature::from_params({{0, {"u"}}, {2, {"m"}}});
}

/// The cyclic group (Z_n, + mod n) with u interpreted as 0, seen as an
/// algebra for the monoid signature.
inline Algebra make_zn(int n) {
  std::vector<Element> carrier;
  for (int i = 0; i < n; ++i) carrier.push_back(std::to_string(i));
  std::map<Algebra::OpKey, Element> ops;
  ops.emplace(Algebra::OpKey{"u", {}}, "0");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      ops.emplace(Algebra::OpKey{"m", {std::to_string(a), std::to_string(b)}},
                  std::to_string((a + b) % n));
  return Algebra(monoid_signature(), std::move(carrier), std::move(ops));
}

/// Two-element left-zero table: m(a,b) = a, u = 0. Violates the left-unit
/// identity.
inline Algebra make_left_zero() {
  std::map<Algebra::OpKey, Element> ops;
  ops.emplace(Algebra::OpKey{"u", {}}, "0");
  for (const std::string a : {"0", "1"})
    for (const std::string b : {"0", "1"})
      ops.emplace(Algebra::OpKey{"m", {a, b}}, a);
  return Algebra(monoid_signature(), {"0", "1"}, std::move(ops));
}

inline std::vector<RewriteRule> monoid_rules() {
  return {parse_rule("vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))"),
          parse_rule("vars: a; m(u(), a) -> a"),
          parse_rule("vars: a; m(a, u()) -> a")};
}

inline RewriteSystem monoid_system(long fuel = kDefaultFuel) {
  return RewriteSystem(monoid_signature(), monoid_rules(), fuel);
}

/// Terminating presentation of the commutative monoid over the fixed
/// generators x and y: sorted-insertion swaps instead of bare commutativity.
inline RewriteSystem comm_monoid_system_xy(long fuel = kDefaultFuel) {
  auto rules = monoid_rules();
  rules.push_back(parse_rule("m(y, x) -> m(x, y)"));
  rules.push_back(parse_rule("vars: a; m(y, m(x, a)) -> m(x, m(y, a))"));
  return RewriteSystem(monoid_signature(), std::move(rules), fuel);
}

/// Deterministic random step function over the value pool: up to max_pieces
/// pieces with breakpoints k/d, d <= max_denominator.
inline StepFn<Element> random_stepfn(std::mt19937& rng, const std::vector<Element>& pool,
                                     int max_pieces = 4, int max_denominator = 8) {
  std::vector<Rational> grid;
  for (int d = 2; d <= max_denominator; ++d)
    for (int k = 1; k < d; ++k) grid.push_back(rational(k, d));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  const int pieces = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_pieces));
  std::set<Rational> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1) cuts.insert(grid[rng() % grid.size()]);

  std::vector<Rational> breaks;
  breaks.push_back(Rational(0));
  breaks.insert(breaks.end(), cuts.begin(), cuts.end());
  breaks.push_back(Rational(1));
  std::vector<Element> values;
  for (int i = 0; i < pieces; ++i) values.push_back(pool[rng() % pool.size()]);
  return StepFn<Element>(std::move(breaks), std::move(values));
}

/// Random rational in [0,1) on a fine grid.
inline Rational random_point(std::mt19937& rng, int denominator = 1009) {
  return rational(static_cast<long long>(rng() % static_cast<unsigned>(denominator)),
                  denominator);
}

/// Leaf counts achievable by a binary tree of node-depth <= depth whose
/// leaves each contribute 0 (unit) or 1 (generator). Independent oracle for
/// the word problem over the monoid presentation.
inline std::set<int> achievable_leaf_counts(int depth) {
  std::set<int> counts = {0, 1};
  for (int d = 0; d < depth; ++d) {
    std::set<int> next = counts;
    for (int a : counts)
      for (int b : counts) next.insert(a + b);
    counts = std::move(next);
  }
  return counts;
}

/// All words over the alphabet with length in [1, max_len], plus the empty
/// word, as strings (letters joined by '.').
inline std::set<std::string> all_words(const std::vector<std::string>& alphabet,
                                       int max_len) {
  std::set<std::string> words = {""};
  std::vector<std::string> frontier = {""};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier)
      for (const auto& letter : alphabet)
        next.push_back(w.empty() ? letter : w + "." + letter);
    for (const auto& w : next) words.insert(w);
    frontier = std::move(next);
  }
  return words;
}

/// Flattens a monoid normal form (a unit node, a generator, or a right
/// comb m(g, tail)) to its word; returns false if the term is not in
/// right-comb shape.
inline bool flatten_normal_form(const Term& t, std::string& word) {
  if (!t.is_leaf() && t.label() == "u" && t.arity() == 0) {
    word.clear();
    return true;
  }
  if (t.is_leaf()) {
    word = t.leaf_value();
    return true;
  }
  if (t.label() != "m" || t.arity() != 2) return false;
  const Term& head = t.children()[0];
  if (head.is_leaf()) {
    std::string tail;
    if (!flatten_normal_form(t.children()[1], tail)) return false;
    word = tail.empty() ? head.leaf_value() : head.leaf_value() + "." + tail;
    return true;
  }
  return false;
}

}  // namespace hmfree::test
