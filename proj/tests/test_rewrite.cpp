#include <hmfree/error.hpp>
#include <hmfree/rewrite.hpp>

#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace hmfree;
using namespace hmfree::test;

TEST_CASE("rule parsing and invariants") {
  const RewriteRule assoc = parse_rule("vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))");
  CHECK(assoc.variables() == std::vector<std::string>{"a", "b", "c"});
  CHECK(assoc.is_pure());
  CHECK(to_text(assoc) == "vars: a,b,c; m(m(a, b), c) -> m(a, m(b, c))");
  CHECK(parse_rule(to_text(assoc)) == assoc);

  const RewriteRule ground = parse_rule("m(y, x) -> m(x, y)");
  CHECK(ground.variables().empty());
  CHECK_FALSE(ground.is_pure());

  CHECK_THROWS_AS(parse_rule("vars: a,b; a -> b"), ValidationError);   // bare variable lhs
  CHECK_THROWS_AS(parse_rule("vars: a,b; m(a,a) -> b"), ValidationError);  // rhs var not in lhs
  CHECK_THROWS_AS(parse_rule("m(a,b) = m(b,a)"), ValidationError);     // missing arrow
}

TEST_CASE("normalize with the monoid rules") {
  const RewriteSystem monoid = monoid_system();

  SUBCASE("associativity and unit elimination") {
    CHECK(normalize(parse_term("m(m(x,y),u())"), monoid) == parse_term("m(x,y)"));
    CHECK(normalize(parse_term("m(u(),x)"), monoid) == Term::leaf("x"));
    CHECK(normalize(Term::leaf("x"), monoid) == Term::leaf("x"));
  }

  SUBCASE("the empty system rewrites nothing") {
    const RewriteSystem empty(monoid_signature(), {});
    const Term t = parse_term("m(m(x,u()),y)");
    CHECK(normalize(t, empty) == t);
  }

  SUBCASE("a two-cycle exhausts its fuel") {
    const RewriteSystem swap(monoid_signature(),
                             {parse_rule("vars: a,b; m(a,b) -> m(b,a)")}, 10);
    CHECK_THROWS_AS(normalize(parse_term("m(x,y)"), swap), FuelExhausted);
    // Per-invocation override.
    CHECK_THROWS_AS(normalize(parse_term("m(x,y)"), swap, 1000), FuelExhausted);
  }

  SUBCASE("generator/variable collisions are rejected") {
    CHECK_THROWS_AS(normalize(parse_term("m(a,b)"), monoid), ValidationError);
  }
}

TEST_CASE("quotient equality") {
  const RewriteSystem monoid = monoid_system();
  CHECK(quotient_equal(parse_term("m(x, m(y,z))"), parse_term("m(m(x,y), z)"), monoid));
  CHECK_FALSE(quotient_equal(Term::leaf("x"), Term::leaf("y"), monoid));
  CHECK(quotient_equal(parse_term("m(u(), x)"), Term::leaf("x"), monoid));
}

TEST_CASE("identity satisfaction in finite algebras") {
  const Algebra z5 = make_zn(5);
  const Algebra left_zero = make_left_zero();
  const RewriteRule assoc = parse_rule("vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))");
  const RewriteRule left_unit = parse_rule("vars: a; m(u(), a) -> a");

  CHECK(satisfies_identity(z5, assoc));
  CHECK(satisfies_identity(z5, left_unit));

  SUBCASE("left-zero violates the left unit, witness a=1") {
    const auto violation = find_identity_violation(left_zero, left_unit);
    REQUIRE(violation.has_value());
    CHECK(violation->at("a") == "1");  // m(u,1) = m(0,1) = 0 != 1
    FreeExtension eval(*violation, left_zero);
    CHECK(eval(left_unit.lhs()) != eval(left_unit.rhs()));
  }

  SUBCASE("reflexive rules hold in any algebra") {
    const RewriteRule refl = parse_rule("vars: a,b; m(a,b) -> m(a,b)");
    CHECK(satisfies_identity(z5, refl));
    CHECK(satisfies_identity(left_zero, refl));
  }

  SUBCASE("non-pure rules cannot be evaluated as identities") {
    CHECK_THROWS_AS(satisfies_identity(z5, parse_rule("m(y, x) -> m(x, y)")),
                    ValidationError);
  }
}

TEST_CASE("normalization is idempotent and a congruence") {
  const RewriteSystem monoid = monoid_system();
  const auto terms = enumerate_terms(monoid_signature(), GeneratorSet({"x", "y"}), 2);

  for (const auto& t : terms) {
    const Term once = normalize(t, monoid);
    CHECK(normalize(once, monoid) == once);
  }

  SUBCASE("congruence: equal pieces give equal nodes") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
      const Term& a = terms[rng() % terms.size()];
      const Term& b = terms[rng() % terms.size()];
      if (!quotient_equal(a, b, monoid)) continue;
      for (const auto& c : {terms[rng() % terms.size()]}) {
        CHECK(quotient_equal(Term::node("m", {a, c}), Term::node("m", {b, c}), monoid));
        CHECK(quotient_equal(Term::node("m", {c, a}), Term::node("m", {c, b}), monoid));
      }
    }
  }

  SUBCASE("equivalence relation on the sample") {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
      const Term& a = terms[rng() % terms.size()];
      const Term& b = terms[rng() % terms.size()];
      const Term& c = terms[rng() % terms.size()];
      CHECK(quotient_equal(a, a, monoid));
      CHECK(quotient_equal(a, b, monoid) == quotient_equal(b, a, monoid));
      if (quotient_equal(a, b, monoid) && quotient_equal(b, c, monoid))
        CHECK(quotient_equal(a, c, monoid));
    }
  }
}

TEST_CASE("soundness against satisfying models") {
  // Both orientations of every monoid rule hold in Z5, so quotient-equal
  // terms must evaluate equally there.
  const Algebra z5 = make_zn(5);
  const RewriteSystem monoid = monoid_system();
  const GeneratorSet xs({"x", "y"});
  const CarrierMap f(xs.elements(), z5.carrier(), {{"x", "2"}, {"y", "3"}});
  const FreeExtension eval = free_extension(f, z5);
  for (const auto& t : enumerate_terms(monoid_signature(), xs, 2)) {
    CHECK(eval(t) == eval(normalize(t, monoid)));
  }
}

TEST_CASE("monoid normal forms biject with words") {
  const Signature sig = monoid_signature();
  const RewriteSystem monoid = monoid_system();

  SUBCASE("one generator, depth 3") {
    const GeneratorSet xs({"x"});
    std::set<Term> normal_forms;
    std::set<std::string> words;
    for (const auto& t : enumerate_terms(sig, xs, 3)) {
      const Term nf = normalize(t, monoid);
      normal_forms.insert(nf);
      std::string word;
      REQUIRE(flatten_normal_form(nf, word));
      words.insert(word);
    }
    // Independent oracle: achievable leaf counts of depth<=3 binary trees.
    const std::set<int> counts = achievable_leaf_counts(3);
    CHECK(counts == std::set<int>{0, 1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(normal_forms.size() == counts.size());
    std::set<std::string> expected_words;
    for (const int n : counts) {
      std::string w;
      for (int i = 0; i < n; ++i) w += (i ? ".x" : "x");
      expected_words.insert(w);
    }
    CHECK(words == expected_words);
  }

  SUBCASE("two generators, depth 2") {
    const GeneratorSet xs({"x", "y"});
    std::set<std::string> words;
    for (const auto& t : enumerate_terms(sig, xs, 2)) {
      std::string word;
      REQUIRE(flatten_normal_form(normalize(t, monoid), word));
      words.insert(word);
    }
    // Any word of length 1..4 is the leaf sequence of a depth<=2 tree.
    CHECK(words == all_words({"x", "y"}, 4));
    CHECK(words.size() == 31);
  }
}

TEST_CASE("commutative presentation sorts generators") {
  const RewriteSystem comm = comm_monoid_system_xy();
  CHECK(normalize(parse_term("m(y,x)"), comm) == parse_term("m(x,y)"));
  CHECK(quotient_equal(parse_term("m(y, m(x, y))"), parse_term("m(x, m(y, y))"), comm));
  CHECK(satisfies_identity(make_zn(5), parse_rule("vars: a,b; m(a,b) -> m(b,a)")));
}
