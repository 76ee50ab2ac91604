#include <hmfree/error.hpp>
#include <hmfree/hm.hpp>

#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace hmfree;
using namespace hmfree::test;

TEST_CASE("hm_embed is the constant function") {
  const auto fx = hm_embed<Element>("x");
  CHECK(fx.piece_count() == 1);
  CHECK(fx.value_at(rational(355, 1009)) == "x");
  CHECK_FALSE(fx == hm_embed<Element>("y"));
}

TEST_CASE("lift_op applies the base operation pointwise") {
  const Algebra z5 = make_zn(5);

  SUBCASE("constants lift to the constant at the base result") {
    CHECK(lift_op(z5, 2, "m", {hm_embed<Element>("2"), hm_embed<Element>("4")}) ==
          hm_embed<Element>("1"));
  }

  SUBCASE("two-piece against constant") {
    const StepFn<Element> f({Rational(0), rational(1, 2), Rational(1)}, {"1", "2"});
    const StepFn<Element> g = hm_embed<Element>("3");
    const StepFn<Element> lifted = lift_op(z5, 2, "m", {f, g});
    const StepFn<Element> expect({Rational(0), rational(1, 2), Rational(1)}, {"4", "0"});
    CHECK(lifted == expect);
    // Pointwise oracle at sample points.
    std::mt19937 rng(61);
    for (int i = 0; i < 50; ++i) {
      const Rational t = random_point(rng);
      CHECK(lifted.value_at(t) == z5.apply(2, "m", {f.value_at(t), g.value_at(t)}));
    }
  }

  SUBCASE("arity-0 operations lift to constants") {
    CHECK(lift_op(z5, 0, "u", {}) == hm_embed<Element>("0"));
  }

  SUBCASE("bad labels and arities are rejected") {
    CHECK_THROWS_AS(lift_op(z5, 1, "m", {hm_embed<Element>("0")}), ValidationError);
    CHECK_THROWS_AS(lift_op(z5, 2, "m", {hm_embed<Element>("0")}), ValidationError);
  }
}

TEST_CASE("the constant embedding is a homomorphism (exhaustive)") {
  for (const Algebra& algebra :
       {make_zn(2), make_zn(3), make_zn(5), make_left_zero(),
        product_algebra({make_zn(2), make_zn(2)})}) {
    const CheckReport report = check_hm_embed_homomorphism(algebra);
    CHECK(report.ok());
    CHECK(report.checked > 0);
  }
}

TEST_CASE("naturality of the constant embedding") {
  const Algebra z5 = make_zn(5);

  SUBCASE("identity and arbitrary maps commute") {
    CHECK(check_naturality_square(identity_map(z5.carrier()), z5.carrier()).ok());
    std::map<Element, Element> table;
    for (int i = 0; i < 5; ++i)
      table.emplace(std::to_string(i), std::to_string((i * i + 1) % 5));
    const CarrierMap f(z5.carrier(), z5.carrier(), table);
    const CheckReport report = check_naturality_square(f, z5.carrier());
    CHECK(report.ok());
    CHECK(report.checked == 5);
  }

  SUBCASE("harness self-test: a corrupted side is reported with its witness") {
    const CheckReport report = compare_pointwise_embeddings(
        [](const Element& x) { return hm_embed<Element>(x); },
        [](const Element& x) {
          return hm_embed<Element>(x == "3" ? std::string("corrupt") : x);
        },
        z5.carrier());
    REQUIRE(report.failures.size() == 1);
    CHECK(report.failures.front().witness == "3");
    CHECK_FALSE(report.ok());
  }
}

TEST_CASE("canonical homomorphism on explicit inputs") {
  const GeneratorSet xs({"x", "y"});
  const HomToHMFree h = build_h(xs);

  const StepFn<Element> f({Rational(0), rational(1, 2), Rational(1)}, {"x", "y"});

  SUBCASE("a generator leaf becomes a generator-valued step function") {
    const TermStepFn image = h(HMTerm::leaf(f));
    const TermStepFn expect({Rational(0), rational(1, 2), Rational(1)},
                            {Term::leaf("x"), Term::leaf("y")});
    CHECK(image == expect);
  }

  SUBCASE("operation nodes are built pointwise") {
    const HMTerm node =
        HMTerm::node("m", {HMTerm::leaf(f), HMTerm::leaf(hm_embed<Element>("y"))});
    const TermStepFn image = h(node);
    const TermStepFn expect({Rational(0), rational(1, 2), Rational(1)},
                            {parse_term("m(x,y)"), parse_term("m(y,y)")});
    CHECK(image == expect);
  }

  SUBCASE("constant generators yield the constant at the whole term") {
    // Structural-induction oracle for the embedding identity.
    for (const auto& t : enumerate_terms(monoid_signature(), xs, 2)) {
      const HMTerm constants =
          map_leaves(t, [](const Element& g) { return hm_embed<Element>(g); });
      CHECK(h(constants) == hm_embed<Term>(t));
    }
  }

  SUBCASE("values outside the generator set are rejected") {
    CHECK_THROWS_AS(h(HMTerm::leaf(hm_embed<Element>("zzz"))), ValidationError);
  }

  SUBCASE("with rewriting, every piece is kept in normal form") {
    const HomToHMFree hq = build_h(xs, monoid_system());
    const HMTerm node =
        HMTerm::node("m", {HMTerm::leaf(f), HMTerm::leaf(hm_embed<Element>("y"))});
    // m(x,y) and m(y,y) are already normal; add a unit to force rewriting.
    const HMTerm with_unit = HMTerm::node("m", {node, HMTerm::node("u", {})});
    CHECK(hq(with_unit) == hq(node));
  }
}

TEST_CASE("h is a homomorphism for the lifted node operation") {
  // Compare h on an operation node against the independent pointwise
  // construction from the children's images.
  const GeneratorSet xs({"x", "y"});
  const HomToHMFree h = build_h(xs);
  std::mt19937 rng(67);
  const std::vector<StepFn<Element>> leaves = {
      hm_embed<Element>("x"), hm_embed<Element>("y"),
      random_stepfn(rng, {"x", "y"}), random_stepfn(rng, {"x", "y"})};

  for (int trial = 0; trial < 30; ++trial) {
    const HMTerm left = HMTerm::leaf(leaves[rng() % leaves.size()]);
    const HMTerm right =
        (rng() % 2) ? HMTerm::leaf(leaves[rng() % leaves.size()])
                    : HMTerm::node("m", {HMTerm::leaf(leaves[rng() % leaves.size()]),
                                         HMTerm::leaf(leaves[rng() % leaves.size()])});
    const HMTerm node = HMTerm::node("m", {left, right});

    const TermStepFn via_h = h(node);
    const auto zipped = zip_many<Term>({h(left), h(right)});
    const TermStepFn direct = pointwise_map(
        [](const std::vector<Term>& ts) { return Term::node("m", ts); }, zipped);
    CHECK(via_h == direct);
  }
}

TEST_CASE("h identity: embed-then-h equals the constant at the normal form") {
  const Signature sig = monoid_signature();

  SUBCASE("free case at several depths") {
    const GeneratorSet xs({"x", "y"});
    for (int depth = 0; depth <= 2; ++depth) {
      const CheckReport report = check_h_identity(sig, xs, depth);
      CHECK(report.ok());
    }
    CHECK(check_h_identity(sig, GeneratorSet({"x"}), 3).ok());
  }

  SUBCASE("depth 0 is the generator base case") {
    const CheckReport report = check_h_identity(sig, GeneratorSet({"x"}), 0);
    CHECK(report.ok());
    CHECK(report.checked == 2);  // the generator and the unit node
  }

  SUBCASE("with the monoid rules") {
    const GeneratorSet xs({"x", "y"});
    const CheckReport report = check_h_identity(sig, xs, 2, monoid_system());
    CHECK(report.ok());
    CHECK(report.checked == 147);

    // Spot check: m(x, u()) lands on the constant at x on both routes.
    const HomToHMFree hq = build_h(xs, monoid_system());
    const HMTerm t = HMTerm::node(
        "m", {HMTerm::leaf(hm_embed<Element>("x")), HMTerm::node("u", {})});
    CHECK(hq(t) == hm_embed<Term>(Term::leaf("x")));
  }

  SUBCASE("with the commutative presentation") {
    const GeneratorSet ys({"x", "y"});
    CHECK(check_h_identity(sig, ys, 2, comm_monoid_system_xy()).ok());
  }
}

TEST_CASE("sampled step functions over an algebra") {
  const Algebra z5 = make_zn(5);
  const SampledHMValued sample = SampledHMValued::build(z5, 10, 4, 8, 0);

  CHECK(sample.members().size() >= 10);
  std::set<Element> seen;
  for (const auto& fn : sample.members()) {
    CHECK(fn.piece_count() <= 4);
    for (const auto& b : fn.breakpoints()) CHECK(denominator(b) <= 8);
    for (const auto& v : fn.values()) seen.insert(v);
  }
  CHECK(seen == std::set<Element>(z5.carrier().begin(), z5.carrier().end()));

  SUBCASE("closure keeps denominators on the grid") {
    const SampledHMValued closed = SampledHMValued::build(z5, 10, 4, 8, 1);
    CHECK(closed.members().size() > sample.members().size());
    for (const auto& fn : closed.members())
      for (const auto& b : fn.breakpoints()) CHECK(denominator(b) <= 8);
  }

  SUBCASE("foreign values are rejected") {
    CHECK_THROWS_AS(SampledHMValued::of(z5, {hm_embed<Element>("zz")}), ValidationError);
  }
}

TEST_CASE("identities survive the lift to step functions") {
  const Algebra z5 = make_zn(5);
  const RewriteRule assoc = parse_rule("vars: a,b,c; m(m(a,b),c) -> m(a,m(b,c))");

  SUBCASE("associativity over a 4-element sample, with pointwise oracle") {
    std::mt19937 rng(71);
    std::vector<StepFn<Element>> members = {hm_embed<Element>("1"),
                                            random_stepfn(rng, z5.carrier()),
                                            random_stepfn(rng, z5.carrier()),
                                            random_stepfn(rng, z5.carrier())};
    const SampledHMValued sample = SampledHMValued::of(z5, members);
    const CheckReport report = check_hm_preserves_identities(z5, assoc, sample);
    CHECK(report.ok());
    CHECK(report.checked == 64);  // 4^3 assignments

    // Independent oracle: evaluate both sides through the base algebra at
    // sampled points for random assignments.
    for (int trial = 0; trial < 20; ++trial) {
      std::map<std::string, StepFn<Element>> env;
      for (const auto& v : assoc.variables()) env.emplace(v, members[rng() % members.size()]);
      const Rational t = random_point(rng);
      std::map<std::string, Element> at_t;
      for (const auto& [var, fn] : env) at_t.emplace(var, fn.value_at(t));
      FreeExtension eval(at_t, z5);
      CHECK(eval(assoc.lhs()) == eval(assoc.rhs()));
    }
  }

  SUBCASE("a constants-only sample mirrors the base algebra") {
    std::vector<StepFn<Element>> constants;
    for (const auto& x : z5.carrier()) constants.push_back(hm_embed(x));
    const CheckReport report =
        check_hm_preserves_identities(z5, assoc, SampledHMValued::of(z5, constants));
    CHECK(report.ok());
    CHECK(report.checked == 125);
    CHECK(satisfies_identity(z5, assoc));
  }

  SUBCASE("negative self-test: a violating base algebra is reported") {
    const Algebra left_zero = make_left_zero();
    const RewriteRule left_unit = parse_rule("vars: a; m(u(), a) -> a");
    std::vector<StepFn<Element>> constants = {hm_embed<Element>("0"),
                                              hm_embed<Element>("1")};
    const CheckReport report = check_hm_preserves_identities(
        left_zero, left_unit, SampledHMValued::of(left_zero, constants));
    REQUIRE_FALSE(report.ok());
    CHECK(report.failures.front().witness.find("a=1") != std::string::npos);
  }
}
