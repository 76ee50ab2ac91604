#pragma once

#include "hmfree/signature.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hmfree {

/// Carrier elements and parameter labels are opaque identifiers compared by
/// equality; they carry no other structure.
using Element = std::string;
using Tuple = std::vector<Element>;

/// All tuples of the given length over a universe, in lexicographic order
/// by position in `universe`.
std::vector<Tuple> all_tuples(const std::vector<Element>& universe, int length);

/// Finite algebra: carrier plus one extensional interpretation table per
/// operation label. Tables are total and closed; both are checked at
/// construction.
class Algebra {
public:
  using OpKey = std::pair<std::string, Tuple>;  // label + argument tuple

  Algebra(Signature signature, std::vector<Element> carrier,
          std::map<OpKey, Element> ops);

  const Signature& signature() const { return signature_; }
  const std::vector<Element>& carrier() const { return carrier_; }  // sorted
  const std::map<OpKey, Element>& ops() const { return ops_; }

  bool has_element(const Element& x) const;

  /// e_n(label, args). Validates the label, arity and argument membership.
  const Element& apply(int arity, const std::string& label, const Tuple& args) const;

  bool operator==(const Algebra& other) const = default;

private:
  Signature signature_;
  std::vector<Element> carrier_;
  std::map<OpKey, Element> ops_;
};

/// Total map between finite carriers (or plain finite sets).
class CarrierMap {
public:
  CarrierMap(std::vector<Element> domain, std::vector<Element> codomain,
             std::map<Element, Element> table);

  const std::vector<Element>& domain() const { return domain_; }      // sorted
  const std::vector<Element>& codomain() const { return codomain_; }  // sorted
  const std::map<Element, Element>& table() const { return table_; }

  const Element& operator()(const Element& x) const;
  bool is_injective() const;

  bool operator==(const CarrierMap& other) const = default;

private:
  std::vector<Element> domain_;
  std::vector<Element> codomain_;
  std::map<Element, Element> table_;
};

CarrierMap identity_map(const std::vector<Element>& set);

/// g after f. Throws unless image(f) is contained in domain(g).
CarrierMap compose(const CarrierMap& g, const CarrierMap& f);

struct HomViolation {
  int arity;
  std::string label;
  Tuple args;
  Element lhs;  // op in codomain applied to mapped args
  Element rhs;  // mapped result of op in domain
};

/// First counterexample to the homomorphism equation
///   e_n^B(c, h(x_1), ..., h(x_n)) = h(e_n^A(c, x_1, ..., x_n)),
/// or nullopt if the map is a homomorphism. Exhaustive over all operations
/// and argument tuples. Throws on a signature mismatch or if h does not map
/// carrier(A) into carrier(B).
std::optional<HomViolation> find_hom_violation(const CarrierMap& h, const Algebra& a,
                                               const Algebra& b);

bool is_homomorphism(const CarrierMap& h, const Algebra& a, const Algebra& b);

/// True iff every operation applied to tuples from `subset` lands in
/// `subset`. Throws if `subset` contains unknown elements.
bool is_subalgebra(const Algebra& a, const std::set<Element>& subset);

/// The algebra on `subset` with the restricted tables. Requires
/// is_subalgebra(a, subset).
Algebra restrict_to_subalgebra(const Algebra& a, const std::set<Element>& subset);

/// Identifier of a product-carrier element, e.g. "(1,2)".
Element product_element(const Tuple& components);

/// Componentwise product. All factors must share a signature; the factor
/// sequence must be nonempty.
Algebra product_algebra(const std::vector<Algebra>& factors);

/// Projection from product_algebra(factors) onto factor `index`.
CarrierMap product_projection(const std::vector<Algebra>& factors, std::size_t index);

}  // namespace hmfree
