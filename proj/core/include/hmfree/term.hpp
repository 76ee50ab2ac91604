#pragma once

#include "hmfree/algebra.hpp"
#include "hmfree/error.hpp"
#include "hmfree/signature.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hmfree {

/// Element of an absolutely free algebra: a leaf or an operation node with a
/// parameter label and one child per argument. The leaf payload is generic —
/// generator names for ordinary terms, step functions for terms over an
/// embedded carrier. Immutable value type with structural equality.
template <class Leaf>
class BasicTerm {
public:
  struct Node {
    std::string label;
    std::vector<BasicTerm> children;
    bool operator==(const Node& other) const {
      return label == other.label && children == other.children;
    }
  };

  static BasicTerm leaf(Leaf value) { return BasicTerm(std::move(value)); }
  static BasicTerm node(std::string label, std::vector<BasicTerm> children) {
    return BasicTerm(Node{std::move(label), std::move(children)});
  }

  bool is_leaf() const { return std::holds_alternative<Leaf>(repr_); }

  const Leaf& leaf_value() const {
    if (!is_leaf()) throw Error("leaf_value() on an operation node");
    return std::get<Leaf>(repr_);
  }

  const std::string& label() const {
    if (is_leaf()) throw Error("label() on a leaf");
    return std::get<Node>(repr_).label;
  }

  const std::vector<BasicTerm>& children() const {
    if (is_leaf()) throw Error("children() on a leaf");
    return std::get<Node>(repr_).children;
  }

  int arity() const { return is_leaf() ? 0 : static_cast<int>(children().size()); }

  /// Node depth: leaves and childless operation nodes have depth 0; a node
  /// with children is one deeper than its deepest child.
  int depth() const {
    if (is_leaf()) return 0;
    int deepest = -1;
    for (const auto& child : children()) deepest = std::max(deepest, child.depth());
    return deepest + 1;
  }

  std::size_t node_count() const {
    if (is_leaf()) return 1;
    std::size_t n = 1;
    for (const auto& child : children()) n += child.node_count();
    return n;
  }

  bool operator==(const BasicTerm& other) const { return repr_ == other.repr_; }

private:
  explicit BasicTerm(Leaf value) : repr_(std::move(value)) {}
  explicit BasicTerm(Node node) : repr_(std::move(node)) {}

  std::variant<Leaf, Node> repr_;
};

/// Deterministic total order (leaves first, then by label, arity, children).
template <class Leaf>
int term_compare(const BasicTerm<Leaf>& a, const BasicTerm<Leaf>& b) {
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? -1 : 1;
  if (a.is_leaf()) {
    if (a.leaf_value() < b.leaf_value()) return -1;
    if (b.leaf_value() < a.leaf_value()) return 1;
    return 0;
  }
  if (a.label() != b.label()) return a.label() < b.label() ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (int i = 0; i < a.arity(); ++i) {
    const int c = term_compare(a.children()[i], b.children()[i]);
    if (c != 0) return c;
  }
  return 0;
}

template <class Leaf>
bool operator<(const BasicTerm<Leaf>& a, const BasicTerm<Leaf>& b) {
  return term_compare(a, b) < 0;
}

/// Structure-preserving relabeling of leaves.
template <class Leaf, class Fn>
auto map_leaves(const BasicTerm<Leaf>& t, const Fn& fn)
    -> BasicTerm<std::decay_t<decltype(fn(std::declval<const Leaf&>()))>> {
  using Out = BasicTerm<std::decay_t<decltype(fn(std::declval<const Leaf&>()))>>;
  if (t.is_leaf()) return Out::leaf(fn(t.leaf_value()));
  std::vector<Out> children;
  children.reserve(t.children().size());
  for (const auto& child : t.children()) children.push_back(map_leaves(child, fn));
  return Out::node(t.label(), std::move(children));
}

/// Ordinary term: leaves are generator names.
using Term = BasicTerm<Element>;

std::size_t term_hash(const Term& t);

/// Finite nonempty set of generator identifiers.
class GeneratorSet {
public:
  explicit GeneratorSet(std::vector<std::string> elements);

  const std::vector<std::string>& elements() const { return elements_; }  // sorted
  bool contains(const std::string& name) const;
  std::size_t size() const { return elements_.size(); }

  /// True iff every element also belongs to `other`.
  bool subset_of(const GeneratorSet& other) const;

  bool operator==(const GeneratorSet& other) const = default;

private:
  std::vector<std::string> elements_;
};

/// Validated leaf constructor: the generator must belong to the set.
Term make_generator(const GeneratorSet& generators, const std::string& name);

/// Validated node constructor: label must exist at `arity` and the children
/// count must match.
Term make_op(const Signature& signature, int arity, const std::string& label,
             std::vector<Term> children);

/// Checks labels/arities against the signature and leaves against the
/// generator set; throws ValidationError naming the violation.
void validate_term(const Term& t, const Signature& signature, const GeneratorSet& generators);

/// The unique homomorphic extension of a generator assignment into a finite
/// algebra: leaves evaluate through the assignment, nodes through the
/// algebra's tables. Immutable; safe to share across threads.
class FreeExtension {
public:
  /// `assignment` must be total on the generators it will meet and must map
  /// into carrier(target).
  FreeExtension(std::map<std::string, Element> assignment, Algebra target);

  const Algebra& target() const { return target_; }
  Element operator()(const Term& t) const;

private:
  std::map<std::string, Element> assignment_;
  Algebra target_;
};

FreeExtension free_extension(const CarrierMap& assignment, const Algebra& target);

/// The term transformer induced by a map of generator sets: relabels every
/// leaf, preserving structure.
class TermRenaming {
public:
  explicit TermRenaming(CarrierMap generator_map);
  Term operator()(const Term& t) const;
  const CarrierMap& generator_map() const { return map_; }

private:
  CarrierMap map_;
};

TermRenaming induced_map(const CarrierMap& generator_map);

/// All well-formed terms of node-depth <= depth over the generators, in a
/// deterministic order with no duplicates: level by level; within a level
/// generators first (sorted), then operation nodes by arity, label, and
/// lexicographic child index.
std::vector<Term> enumerate_terms(const Signature& signature,
                                  const GeneratorSet& generators, int depth);

/// Parenthesized prefix text, e.g. "m(x, m(y, y))"; nullary nodes print as
/// "u()". Identifiers are [A-Za-z0-9_]+.
std::string to_text(const Term& t);
Term parse_term(std::string_view text);

}  // namespace hmfree
