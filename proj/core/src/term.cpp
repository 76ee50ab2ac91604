#include "hmfree/term.hpp"

#include <cctype>
#include <sstream>

namespace hmfree {

std::size_t term_hash(const Term& t) {
  // FNV-1a style structural combine.
  constexpr std::size_t kOffset = 1469598103934665603ull;
  constexpr std::size_t kPrime = 1099511628211ull;
  auto mix = [](std::size_t h, std::size_t v) {
    h ^= v;
    h *= kPrime;
    return h;
  };
  std::size_t h = kOffset;
  if (t.is_leaf()) {
    h = mix(h, 0x67);  // leaf tag
    for (char c : t.leaf_value()) h = mix(h, static_cast<unsigned char>(c));
    return h;
  }
  h = mix(h, 0x6f);  // node tag
  for (char c : t.label()) h = mix(h, static_cast<unsigned char>(c));
  h = mix(h, static_cast<std::size_t>(t.arity()));
  for (const auto& child : t.children()) h = mix(h, term_hash(child));
  return h;
}

GeneratorSet::GeneratorSet(std::vector<std::string> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("generator set must be nonempty");
  std::sort(elements_.begin(), elements_.end());
  auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end())
    throw ValidationError("duplicate generator '" + *dup + "'");
}

bool GeneratorSet::contains(const std::string& name) const {
  return std::binary_search(elements_.begin(), elements_.end(), name);
}

bool GeneratorSet::subset_of(const GeneratorSet& other) const {
  for (const auto& x : elements_)
    if (!other.contains(x)) return false;
  return true;
}

Term make_generator(const GeneratorSet& generators, const std::string& name) {
  if (!generators.contains(name))
    throw ValidationError("unknown generator '" + name + "'");
  return Term::leaf(name);
}

Term make_op(const Signature& signature, int arity, const std::string& label,
             std::vector<Term> children) {
  if (!signature.has_op(arity, label))
    throw ValidationError("unknown operation '" + label + "' at arity " +
                          std::to_string(arity));
  if (static_cast<int>(children.size()) != arity)
    throw ValidationError("arity mismatch: '" + label + "' expects " +
                          std::to_string(arity) + " children, got " +
                          std::to_string(children.size()));
  return Term::node(label, std::move(children));
}

void validate_term(const Term& t, const Signature& signature,
                   const GeneratorSet& generators) {
  if (t.is_leaf()) {
    if (!generators.contains(t.leaf_value()))
      throw ValidationError("unknown generator '" + t.leaf_value() + "'");
    return;
  }
  if (!signature.has_op(t.arity(), t.label()))
    throw ValidationError("unknown operation '" + t.label() + "' at arity " +
                          std::to_string(t.arity()));
  for (const auto& child : t.children()) validate_term(child, signature, generators);
}

FreeExtension::FreeExtension(std::map<std::string, Element> assignment, Algebra target)
    : assignment_(std::move(assignment)), target_(std::move(target)) {
  for (const auto& [gen, value] : assignment_)
    if (!target_.has_element(value))
      throw ValidationError("assignment of '" + gen + "' to '" + value +
                            "' lies outside the target carrier");
}

Element FreeExtension::operator()(const Term& t) const {
  if (t.is_leaf()) {
    auto it = assignment_.find(t.leaf_value());
    if (it == assignment_.end())
      throw ValidationError("unknown generator '" + t.leaf_value() + "'");
    return it->second;
  }
  Tuple args;
  args.reserve(t.children().size());
  for (const auto& child : t.children()) args.push_back((*this)(child));
  return target_.apply(t.arity(), t.label(), args);
}

FreeExtension free_extension(const CarrierMap& assignment, const Algebra& target) {
  return FreeExtension(assignment.table(), target);
}

TermRenaming::TermRenaming(CarrierMap generator_map) : map_(std::move(generator_map)) {}

Term TermRenaming::operator()(const Term& t) const {
  return map_leaves(t, [this](const Element& x) -> Element { return map_(x); });
}

TermRenaming induced_map(const CarrierMap& generator_map) {
  return TermRenaming(generator_map);
}

std::vector<Term> enumerate_terms(const Signature& signature,
                                  const GeneratorSet& generators, int depth) {
  if (depth < 0) throw ValidationError("negative enumeration depth");

  // Level 0: generator leaves, then nullary nodes.
  std::vector<Term> terms;
  for (const auto& g : generators.elements()) terms.push_back(Term::leaf(g));
  if (signature.has_arity(0))
    for (const auto& label : signature.labels(0)) terms.push_back(Term::node(label, {}));

  std::size_t level_begin = 0;  // first index of the previous level
  for (int level = 1; level <= depth; ++level) {
    const std::size_t level_end = terms.size();
    std::vector<Term> fresh;
    for (const auto& [arity, labels] : signature.params()) {
      if (arity == 0) continue;
      // Child index tuples over everything built so far; a node belongs to
      // this level iff at least one child comes from the previous level.
      std::vector<std::vector<std::size_t>> tuples;
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      while (true) {
        bool has_recent = false;
        for (std::size_t i : idx)
          if (i >= level_begin) has_recent = true;
        if (has_recent) tuples.push_back(idx);
        std::size_t pos = idx.size();
        bool done = true;
        while (pos > 0) {
          --pos;
          if (++idx[pos] < level_end) {
            done = false;
            break;
          }
          idx[pos] = 0;
        }
        if (done) break;
      }
      for (const auto& label : labels) {
        for (const auto& tuple : tuples) {
          std::vector<Term> children;
          children.reserve(tuple.size());
          for (std::size_t i : tuple) children.push_back(terms[i]);
          fresh.push_back(Term::node(label, std::move(children)));
        }
      }
    }
    terms.insert(terms.end(), fresh.begin(), fresh.end());
    level_begin = level_end;
    if (level_begin == terms.size()) break;  // nothing new can appear
  }
  return terms;
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct TermParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ValidationError("term parse error at offset " + std::to_string(pos) + ": " +
                          what + " in '" + std::string(text) + "'");
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  Term term() {
    std::string name = ident();
    skip_ws();
    if (pos < text.size() && text[pos] == '(') {
      ++pos;  // '('
      std::vector<Term> children;
      skip_ws();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        return Term::node(std::move(name), {});
      }
      while (true) {
        children.push_back(term());
        skip_ws();
        if (pos >= text.size()) fail("unterminated argument list");
        if (text[pos] == ',') {
          ++pos;
          continue;
        }
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        fail("expected ',' or ')'");
      }
      return Term::node(std::move(name), std::move(children));
    }
    return Term::leaf(std::move(name));
  }

  Term parse() {
    Term t = term();
    skip_ws();
    if (pos != text.size()) fail("trailing input");
    return t;
  }
};

void print_term(const Term& t, std::ostream& out) {
  if (t.is_leaf()) {
    out << t.leaf_value();
    return;
  }
  out << t.label() << "(";
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i > 0) out << ", ";
    print_term(t.children()[i], out);
  }
  out << ")";
}

}  // namespace

std::string to_text(const Term& t) {
  std::ostringstream out;
  print_term(t, out);
  return out.str();
}

Term parse_term(std::string_view text) { return TermParser{text}.parse(); }

}  // namespace hmfree
