#pragma once

#include "hmfree/algebra.hpp"
#include "hmfree/term.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hmfree {

inline constexpr long kDefaultFuel = 10000;

/// Oriented equation between terms with variables. Leaves named in
/// `variables` are pattern variables; any other leaf is a ground generator
/// constant. Variables and generators occupy disjoint namespaces.
class RewriteRule {
public:
  /// Validates: every variable of rhs occurs in lhs, lhs is not a bare
  /// variable, and declared variables are unique.
  RewriteRule(Term lhs, Term rhs, std::vector<std::string> variables);

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  const std::vector<std::string>& variables() const { return variables_; }  // sorted
  bool is_variable(const std::string& name) const;

  /// True iff every leaf of lhs and rhs is a declared variable. Only pure
  /// rules can be evaluated as identities in an algebra.
  bool is_pure() const;

  bool operator==(const RewriteRule& other) const = default;

private:
  Term lhs_;
  Term rhs_;
  std::vector<std::string> variables_;
};

/// Text form: "vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))". The vars clause may
/// be omitted for ground rules.
RewriteRule parse_rule(std::string_view text);
std::string to_text(const RewriteRule& rule);

/// Oriented presentation of an equational class: rules tried in declaration
/// order, leftmost-innermost, under a step budget.
class RewriteSystem {
public:
  RewriteSystem(Signature signature, std::vector<RewriteRule> rules,
                long fuel = kDefaultFuel);

  const Signature& signature() const { return signature_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  long fuel() const { return fuel_; }

  bool operator==(const RewriteSystem& other) const = default;

private:
  Signature signature_;
  std::vector<RewriteRule> rules_;
  long fuel_;
};

/// Matches `pattern` against `subject`, extending `binding`. Pattern leaves
/// in `variables` bind subterms (consistently); other leaves match only
/// themselves.
bool match(const Term& pattern, const Term& subject, const RewriteRule& rule,
           std::map<std::string, Term>& binding);

Term substitute(const Term& pattern, const RewriteRule& rule,
                const std::map<std::string, Term>& binding);

/// Leftmost-innermost rewriting to a fixed point, trying rules in
/// declaration order. Throws FuelExhausted when more than `fuel` steps would
/// be needed; a non-normal form is never returned silently. Throws
/// ValidationError if a leaf of `t` collides with a rule variable.
Term normalize(const Term& t, const RewriteSystem& system);
Term normalize(const Term& t, const RewriteSystem& system, long fuel);

/// True iff both terms have the same normal form.
bool quotient_equal(const Term& a, const Term& b, const RewriteSystem& system);

/// First assignment of carrier elements to the rule's variables under which
/// lhs and rhs evaluate differently, or nullopt when the algebra satisfies
/// the identity. Exhaustive. Requires a pure rule over the same signature.
std::optional<std::map<std::string, Element>> find_identity_violation(
    const Algebra& algebra, const RewriteRule& rule);

bool satisfies_identity(const Algebra& algebra, const RewriteRule& rule);

}  // namespace hmfree
