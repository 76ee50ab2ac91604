#include "hmfree/rewrite.hpp"

#include "hmfree/error.hpp"

#include <algorithm>
#include <sstream>

namespace hmfree {
namespace {

void collect_leaves(const Term& t, std::set<std::string>& out) {
  if (t.is_leaf()) {
    out.insert(t.leaf_value());
    return;
  }
  for (const auto& child : t.children()) collect_leaves(child, out);
}

void validate_rule_ops(const Term& t, const Signature& sig) {
  if (t.is_leaf()) return;
  if (!sig.has_op(t.arity(), t.label()))
    throw ValidationError("rule uses unknown operation '" + t.label() + "' at arity " +
                          std::to_string(t.arity()));
  for (const auto& child : t.children()) validate_rule_ops(child, sig);
}

}  // namespace

RewriteRule::RewriteRule(Term lhs, Term rhs, std::vector<std::string> variables)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)), variables_(std::move(variables)) {
  std::sort(variables_.begin(), variables_.end());
  auto dup = std::adjacent_find(variables_.begin(), variables_.end());
  if (dup != variables_.end())
    throw ValidationError("duplicate rule variable '" + *dup + "'");

  if (lhs_.is_leaf() && is_variable(lhs_.leaf_value()))
    throw ValidationError("rule left-hand side is a bare variable");

  std::set<std::string> lhs_leaves, rhs_leaves;
  collect_leaves(lhs_, lhs_leaves);
  collect_leaves(rhs_, rhs_leaves);
  for (const auto& leaf : rhs_leaves) {
    if (is_variable(leaf) && lhs_leaves.count(leaf) == 0)
      throw ValidationError("variable '" + leaf + "' occurs in rhs but not in lhs");
  }
}

bool RewriteRule::is_variable(const std::string& name) const {
  return std::binary_search(variables_.begin(), variables_.end(), name);
}

bool RewriteRule::is_pure() const {
  std::set<std::string> leaves;
  collect_leaves(lhs_, leaves);
  collect_leaves(rhs_, leaves);
  for (const auto& leaf : leaves)
    if (!is_variable(leaf)) return false;
  return true;
}

RewriteRule parse_rule(std::string_view text) {
  std::string s(text);
  std::vector<std::string> variables;
  const auto vars_pos = s.find("vars:");
  if (vars_pos != std::string::npos) {
    const auto semi = s.find(';', vars_pos);
    if (semi == std::string::npos)
      throw ValidationError("rule '" + s + "' has a vars clause without ';'");
    std::string list = s.substr(vars_pos + 5, semi - vars_pos - 5);
    std::istringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto begin = item.find_first_not_of(" \t");
      const auto end = item.find_last_not_of(" \t");
      if (begin == std::string::npos) continue;
      variables.push_back(item.substr(begin, end - begin + 1));
    }
    s = s.substr(semi + 1);
  }
  const auto arrow = s.find("->");
  if (arrow == std::string::npos)
    throw ValidationError("rule '" + std::string(text) + "' is missing '->'");
  Term lhs = parse_term(s.substr(0, arrow));
  Term rhs = parse_term(s.substr(arrow + 2));
  return RewriteRule(std::move(lhs), std::move(rhs), std::move(variables));
}

std::string to_text(const RewriteRule& rule) {
  std::ostringstream out;
  if (!rule.variables().empty()) {
    out << "vars: ";
    for (std::size_t i = 0; i < rule.variables().size(); ++i) {
      if (i > 0) out << ",";
      out << rule.variables()[i];
    }
    out << "; ";
  }
  out << to_text(rule.lhs()) << " -> " << to_text(rule.rhs());
  return out.str();
}

RewriteSystem::RewriteSystem(Signature signature, std::vector<RewriteRule> rules,
                             long fuel)
    : signature_(std::move(signature)), rules_(std::move(rules)), fuel_(fuel) {
  if (fuel_ <= 0) throw ValidationError("fuel must be positive");
  for (const auto& rule : rules_) {
    validate_rule_ops(rule.lhs(), signature_);
    validate_rule_ops(rule.rhs(), signature_);
  }
}

bool match(const Term& pattern, const Term& subject, const RewriteRule& rule,
           std::map<std::string, Term>& binding) {
  if (pattern.is_leaf()) {
    const std::string& name = pattern.leaf_value();
    if (rule.is_variable(name)) {
      auto [it, inserted] = binding.emplace(name, subject);
      return inserted || it->second == subject;
    }
    return subject.is_leaf() && subject.leaf_value() == name;
  }
  if (subject.is_leaf()) return false;
  if (pattern.label() != subject.label() || pattern.arity() != subject.arity())
    return false;
  for (int i = 0; i < pattern.arity(); ++i)
    if (!match(pattern.children()[i], subject.children()[i], rule, binding)) return false;
  return true;
}

Term substitute(const Term& pattern, const RewriteRule& rule,
                const std::map<std::string, Term>& binding) {
  if (pattern.is_leaf()) {
    const std::string& name = pattern.leaf_value();
    if (rule.is_variable(name)) {
      auto it = binding.find(name);
      if (it == binding.end())
        throw Error("unbound variable '" + name + "' during substitution");
      return it->second;
    }
    return pattern;
  }
  std::vector<Term> children;
  children.reserve(pattern.children().size());
  for (const auto& child : pattern.children())
    children.push_back(substitute(child, rule, binding));
  return Term::node(pattern.label(), std::move(children));
}

namespace {

// Rewrites the leftmost-innermost redex, trying rules in declaration order.
// Returns the reduct or nullopt when no redex exists.
std::optional<Term> rewrite_once(const Term& t, const RewriteSystem& system) {
  if (!t.is_leaf()) {
    for (int i = 0; i < t.arity(); ++i) {
      if (auto reduced = rewrite_once(t.children()[i], system)) {
        std::vector<Term> children = t.children();
        children[static_cast<std::size_t>(i)] = std::move(*reduced);
        return Term::node(t.label(), std::move(children));
      }
    }
  }
  for (const auto& rule : system.rules()) {
    std::map<std::string, Term> binding;
    if (match(rule.lhs(), t, rule, binding))
      return substitute(rule.rhs(), rule, binding);
  }
  return std::nullopt;
}

void check_no_variable_leaves(const Term& t, const RewriteSystem& system) {
  if (t.is_leaf()) {
    for (const auto& rule : system.rules())
      if (rule.is_variable(t.leaf_value()))
        throw ValidationError("generator '" + t.leaf_value() +
                              "' collides with a rule variable");
    return;
  }
  for (const auto& child : t.children()) check_no_variable_leaves(child, system);
}

}  // namespace

Term normalize(const Term& t, const RewriteSystem& system, long fuel) {
  if (fuel <= 0) throw ValidationError("fuel must be positive");
  check_no_variable_leaves(t, system);
  Term current = t;
  long used = 0;
  while (auto reduced = rewrite_once(current, system)) {
    if (++used > fuel)
      throw FuelExhausted("no normal form within " + std::to_string(fuel) +
                          " steps for " + to_text(t));
    current = std::move(*reduced);
  }
  return current;
}

Term normalize(const Term& t, const RewriteSystem& system) {
  return normalize(t, system, system.fuel());
}

bool quotient_equal(const Term& a, const Term& b, const RewriteSystem& system) {
  return normalize(a, system) == normalize(b, system);
}

std::optional<std::map<std::string, Element>> find_identity_violation(
    const Algebra& algebra, const RewriteRule& rule) {
  if (!rule.is_pure())
    throw ValidationError(
        "identity check requires a pure rule (every leaf a declared variable)");

  const std::vector<Element>& carrier = algebra.carrier();
  const auto& vars = rule.variables();
  for (const auto& assignment_tuple : all_tuples(carrier, static_cast<int>(vars.size()))) {
    std::map<std::string, Element> assignment;
    for (std::size_t i = 0; i < vars.size(); ++i)
      assignment.emplace(vars[i], assignment_tuple[i]);
    FreeExtension eval(assignment, algebra);
    if (eval(rule.lhs()) != eval(rule.rhs())) return assignment;
  }
  return std::nullopt;
}

bool satisfies_identity(const Algebra& algebra, const RewriteRule& rule) {
  return !find_identity_violation(algebra, rule).has_value();
}

}  // namespace hmfree
