#include "hmfree/algebra.hpp"

#include "hmfree/error.hpp"

#include <algorithm>
#include <sstream>

namespace hmfree {
namespace {

std::vector<Element> sorted_unique(std::vector<Element> xs, const char* what) {
  std::sort(xs.begin(), xs.end());
  auto dup = std::adjacent_find(xs.begin(), xs.end());
  if (dup != xs.end())
    throw ValidationError(std::string(what) + " contains duplicate '" + *dup + "'");
  return xs;
}

std::string tuple_text(const Tuple& args) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out << ",";
    out << args[i];
  }
  out << ")";
  return out.str();
}

// Guard against accidentally astronomical tables (arity^carrier blowup).
constexpr std::size_t kMaxTableEntries = 1u << 22;

std::size_t table_size(std::size_t carrier, int arity) {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) {
    n *= carrier;
    if (n > kMaxTableEntries) throw ValidationError("operation table too large");
  }
  return n;
}

}  // namespace

std::vector<Tuple> all_tuples(const std::vector<Element>& universe, int length) {
  if (length < 0) throw ValidationError("negative tuple length");
  std::vector<Tuple> out;
  out.reserve(table_size(universe.size(), length));
  Tuple current(static_cast<std::size_t>(length));
  // odometer over indices
  std::vector<std::size_t> idx(static_cast<std::size_t>(length), 0);
  if (length == 0) {
    out.push_back({});
    return out;
  }
  if (universe.empty()) return out;
  while (true) {
    for (std::size_t i = 0; i < idx.size(); ++i) current[i] = universe[idx[i]];
    out.push_back(current);
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (++idx[pos] < universe.size()) break;
      idx[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

Algebra::Algebra(Signature signature, std::vector<Element> carrier,
                 std::map<OpKey, Element> ops)
    : signature_(std::move(signature)),
      carrier_(sorted_unique(std::move(carrier), "carrier")),
      ops_(std::move(ops)) {
  if (carrier_.empty()) throw ValidationError("carrier must be nonempty");
  std::size_t expected = 0;
  for (const auto& [arity, labels] : signature_.params()) {
    const auto tuples = all_tuples(carrier_, arity);
    expected += labels.size() * tuples.size();
    for (const auto& label : labels) {
      for (const auto& args : tuples) {
        auto it = ops_.find({label, args});
        if (it == ops_.end())
          throw ValidationError("operation table not total: missing " + label +
                                tuple_text(args));
        if (!has_element(it->second))
          throw ValidationError("operation table not closed: " + label +
                                tuple_text(args) + " = '" + it->second +
                                "' is outside the carrier");
      }
    }
  }
  if (ops_.size() != expected)
    throw ValidationError("operation table has entries for unknown operations or tuples");
}

bool Algebra::has_element(const Element& x) const {
  return std::binary_search(carrier_.begin(), carrier_.end(), x);
}

const Element& Algebra::apply(int arity, const std::string& label, const Tuple& args) const {
  if (!signature_.has_op(arity, label))
    throw ValidationError("unknown operation '" + label + "' at arity " +
                          std::to_string(arity));
  if (static_cast<int>(args.size()) != arity)
    throw ValidationError("arity mismatch for '" + label + "': expected " +
                          std::to_string(arity) + " arguments, got " +
                          std::to_string(args.size()));
  auto it = ops_.find({label, args});
  if (it == ops_.end())
    throw ValidationError("argument outside carrier in " + label + tuple_text(args));
  return it->second;
}

CarrierMap::CarrierMap(std::vector<Element> domain, std::vector<Element> codomain,
                       std::map<Element, Element> table)
    : domain_(sorted_unique(std::move(domain), "map domain")),
      codomain_(sorted_unique(std::move(codomain), "map codomain")),
      table_(std::move(table)) {
  for (const auto& x : domain_) {
    auto it = table_.find(x);
    if (it == table_.end())
      throw ValidationError("map not total: no image for '" + x + "'");
    if (!std::binary_search(codomain_.begin(), codomain_.end(), it->second))
      throw ValidationError("image '" + it->second + "' of '" + x +
                            "' lies outside the codomain");
  }
  if (table_.size() != domain_.size())
    throw ValidationError("map table mentions elements outside its domain");
}

const Element& CarrierMap::operator()(const Element& x) const {
  auto it = table_.find(x);
  if (it == table_.end()) throw ValidationError("element '" + x + "' not in map domain");
  return it->second;
}

bool CarrierMap::is_injective() const {
  std::set<Element> images;
  for (const auto& [from, to] : table_)
    if (!images.insert(to).second) return false;
  return true;
}

CarrierMap identity_map(const std::vector<Element>& set) {
  std::map<Element, Element> table;
  for (const auto& x : set) table.emplace(x, x);
  return CarrierMap(set, set, std::move(table));
}

CarrierMap compose(const CarrierMap& g, const CarrierMap& f) {
  std::map<Element, Element> table;
  for (const auto& x : f.domain()) table.emplace(x, g(f(x)));
  return CarrierMap(f.domain(), g.codomain(), std::move(table));
}

std::optional<HomViolation> find_hom_violation(const CarrierMap& h, const Algebra& a,
                                               const Algebra& b) {
  if (a.signature() != b.signature())
    throw ValidationError("homomorphism check across different signatures");
  if (h.domain() != a.carrier())
    throw ValidationError("map domain differs from the source carrier");
  for (const auto& [x, y] : h.table())
    if (!b.has_element(y))
      throw ValidationError("map image '" + y + "' is not in the target carrier");

  for (const auto& [arity, labels] : a.signature().params()) {
    for (const auto& label : labels) {
      for (const auto& args : all_tuples(a.carrier(), arity)) {
        Tuple mapped(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) mapped[i] = h(args[i]);
        const Element& lhs = b.apply(arity, label, mapped);
        const Element& rhs = h(a.apply(arity, label, args));
        if (lhs != rhs) return HomViolation{arity, label, args, lhs, rhs};
      }
    }
  }
  return std::nullopt;
}

bool is_homomorphism(const CarrierMap& h, const Algebra& a, const Algebra& b) {
  return !find_hom_violation(h, a, b).has_value();
}

bool is_subalgebra(const Algebra& a, const std::set<Element>& subset) {
  for (const auto& x : subset)
    if (!a.has_element(x))
      throw ValidationError("subset element '" + x + "' is not in the carrier");
  const std::vector<Element> sub(subset.begin(), subset.end());
  for (const auto& [arity, labels] : a.signature().params()) {
    for (const auto& label : labels) {
      for (const auto& args : all_tuples(sub, arity)) {
        if (subset.count(a.apply(arity, label, args)) == 0) return false;
      }
    }
  }
  return true;
}

Algebra restrict_to_subalgebra(const Algebra& a, const std::set<Element>& subset) {
  if (!is_subalgebra(a, subset))
    throw ValidationError("subset is not closed under the operations");
  const std::vector<Element> sub(subset.begin(), subset.end());
  std::map<Algebra::OpKey, Element> ops;
  for (const auto& [arity, labels] : a.signature().params())
    for (const auto& label : labels)
      for (const auto& args : all_tuples(sub, arity))
        ops.emplace(Algebra::OpKey{label, args}, a.apply(arity, label, args));
  return Algebra(a.signature(), sub, std::move(ops));
}

Element product_element(const Tuple& components) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i > 0) out << ",";
    out << components[i];
  }
  out << ")";
  return out.str();
}

namespace {

// Product carrier in lexicographic factor order, together with the
// component tuples backing each encoded element.
std::vector<Tuple> product_tuples(const std::vector<Algebra>& factors) {
  std::vector<Tuple> tuples = {{}};
  for (const auto& factor : factors) {
    std::vector<Tuple> next;
    next.reserve(tuples.size() * factor.carrier().size());
    for (const auto& prefix : tuples) {
      for (const auto& x : factor.carrier()) {
        Tuple t = prefix;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

}  // namespace

Algebra product_algebra(const std::vector<Algebra>& factors) {
  if (factors.empty()) throw ValidationError("product of an empty factor sequence");
  const Signature& sig = factors.front().signature();
  for (const auto& factor : factors)
    if (factor.signature() != sig)
      throw ValidationError("product factors have different signatures");

  const std::vector<Tuple> tuples = product_tuples(factors);
  std::vector<Element> carrier;
  carrier.reserve(tuples.size());
  std::map<Element, Tuple> decode;
  for (const auto& t : tuples) {
    Element name = product_element(t);
    decode.emplace(name, t);
    carrier.push_back(std::move(name));
  }

  std::map<Algebra::OpKey, Element> ops;
  for (const auto& [arity, labels] : sig.params()) {
    for (const auto& label : labels) {
      for (const auto& args : all_tuples(carrier, arity)) {
        Tuple result(factors.size());
        for (std::size_t k = 0; k < factors.size(); ++k) {
          Tuple component_args(args.size());
          for (std::size_t i = 0; i < args.size(); ++i)
            component_args[i] = decode.at(args[i])[k];
          result[k] = factors[k].apply(arity, label, component_args);
        }
        ops.emplace(Algebra::OpKey{label, args}, product_element(result));
      }
    }
  }
  return Algebra(sig, std::move(carrier), std::move(ops));
}

CarrierMap product_projection(const std::vector<Algebra>& factors, std::size_t index) {
  if (index >= factors.size()) throw ValidationError("projection index out of range");
  const std::vector<Tuple> tuples = product_tuples(factors);
  std::vector<Element> domain;
  std::map<Element, Element> table;
  for (const auto& t : tuples) {
    Element name = product_element(t);
    table.emplace(name, t[index]);
    domain.push_back(std::move(name));
  }
  return CarrierMap(std::move(domain), factors[index].carrier(), std::move(table));
}

}  // namespace hmfree
