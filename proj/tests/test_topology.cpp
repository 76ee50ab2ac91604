#include <hmfree/error.hpp>
#include <hmfree/topology.hpp>

#include <doctest.h>

#include <vector>

using namespace hmfree;

namespace {

const std::vector<std::string> kNames = {"p", "q", "r", "s"};

// Builds the candidate family encoded by `bits` over the first n points:
// bit i of `bits` enables subset-mask i+1 (masks 0 and full are always in).
std::vector<std::set<std::string>> family_from_bits(int n, unsigned bits) {
  std::vector<std::set<std::string>> opens;
  const unsigned full = (1u << n) - 1;
  for (unsigned mask = 0; mask <= full; ++mask) {
    const bool forced = mask == 0 || mask == full;
    const bool enabled = mask > 0 && mask < full && (bits >> (mask - 1)) & 1;
    if (!forced && !enabled) continue;
    std::set<std::string> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) subset.insert(kNames[i]);
    opens.push_back(std::move(subset));
  }
  return opens;
}

// Independent axiom oracle on raw masks: closure under arbitrary unions and
// intersections (not just binary), checked by brute force.
bool oracle_is_topology(int n, unsigned bits) {
  const unsigned full = (1u << n) - 1;
  std::set<unsigned> opens = {0u, full};
  for (unsigned mask = 1; mask < full; ++mask)
    if ((bits >> (mask - 1)) & 1) opens.insert(mask);
  for (unsigned subset_choice = 0; subset_choice < (1u << opens.size()); ++subset_choice) {
    unsigned uni = 0, inter = full;
    std::size_t i = 0;
    bool any = false;
    for (const unsigned open : opens) {
      if ((subset_choice >> i) & 1) {
        uni |= open;
        inter &= open;
        any = true;
      }
      ++i;
    }
    if (!any) continue;
    if (opens.count(uni) == 0 || opens.count(inter) == 0) return false;
  }
  return true;
}

std::vector<std::string> points_of(int n) {
  return {kNames.begin(), kNames.begin() + n};
}

FiniteSpace sierpinski() {
  return FiniteSpace({"a", "b"}, {{}, {"a"}, {"a", "b"}});
}

}  // namespace

TEST_CASE("space validation and diagnostics") {
  CHECK_NOTHROW(FiniteSpace({"a", "b"}, {{}, {"a"}, {"b"}, {"a", "b"}}));
  CHECK_NOTHROW(sierpinski());

  CHECK_THROWS_WITH_AS(FiniteSpace({"a", "b"}, {{}, {"a"}, {"b"}}),
                       doctest::Contains("full set absent"), ValidationError);
  CHECK_THROWS_WITH_AS(FiniteSpace({"a", "b"}, {{"a"}, {"a", "b"}}),
                       doctest::Contains("empty set absent"), ValidationError);
  CHECK_THROWS_WITH_AS(
      FiniteSpace({"a", "b", "c"},
                  {{}, {"a"}, {"b"}, {"a", "b", "c"}}),
      doctest::Contains("union"), ValidationError);
  CHECK_THROWS_AS(FiniteSpace({"a", "a"}, {{}, {"a"}}), ValidationError);
}

TEST_CASE("closed sets are complements of opens") {
  const FiniteSpace s = sierpinski();
  CHECK(is_closed({"b"}, s));
  CHECK_FALSE(is_closed({"a"}, s));
  CHECK(is_closed({}, s));
  CHECK(is_closed({"a", "b"}, s));
  CHECK_THROWS_AS(is_closed({"z"}, s), ValidationError);
}

TEST_CASE("continuity is checked at construction") {
  const FiniteSpace s = sierpinski();
  const FiniteSpace pt({"z"}, {{}, {"z"}});

  CHECK_NOTHROW(ContinuousMap(s, pt, {{"a", "z"}, {"b", "z"}}));
  // b is in every open containing it iff that open is the full set; mapping
  // the open point a onto b is continuous, the reverse mapping is not.
  CHECK_NOTHROW(ContinuousMap(s, s, {{"a", "a"}, {"b", "a"}}));
  CHECK_THROWS_WITH_AS(ContinuousMap(s, s, {{"a", "b"}, {"b", "a"}}),
                       doctest::Contains("not continuous"), ValidationError);
  CHECK_THROWS_AS(ContinuousMap(s, pt, {{"a", "z"}}), ValidationError);
}

TEST_CASE("closed embeddings into the two-point connected space") {
  const FiniteSpace s = sierpinski();
  const FiniteSpace pa({"a"}, {{}, {"a"}});
  const FiniteSpace pb({"b"}, {{}, {"b"}});

  CHECK(is_closed_embedding(ContinuousMap(s, s, {{"a", "a"}, {"b", "b"}})));

  // The closed point embeds closedly; the open point embeds but not closedly.
  const ContinuousMap incl_b(pb, s, {{"b", "b"}});
  CHECK(is_embedding(incl_b));
  CHECK(is_closed_embedding(incl_b));

  const ContinuousMap incl_a(pa, s, {{"a", "a"}});
  CHECK(is_embedding(incl_a));
  CHECK_FALSE(is_closed_embedding(incl_a));

  // Composite closed embedding with a non-injective outer map: the inner
  // map need not be a closed embedding.
  const FiniteSpace pt({"z"}, {{}, {"z"}});
  const ContinuousMap collapse(s, pt, {{"a", "z"}, {"b", "z"}});
  CHECK(is_closed_embedding(compose(collapse, incl_a)));
  CHECK_FALSE(is_closed_embedding(incl_a));
}

TEST_CASE("exhaustive axiom check over all three-point families") {
  // All 2^6 candidate families over {p,q,r}: the production validator must
  // agree with the arbitrary-union/intersection oracle everywhere, and the
  // number of topologies on three labeled points is 29.
  int valid = 0;
  for (unsigned bits = 0; bits < 64; ++bits) {
    const bool expect = oracle_is_topology(3, bits);
    bool accepted = true;
    try {
      FiniteSpace(points_of(3), family_from_bits(3, bits));
    } catch (const ValidationError&) {
      accepted = false;
    }
    CHECK(accepted == expect);
    if (accepted) ++valid;
  }
  CHECK(valid == 29);

  SUBCASE("smaller point counts") {
    int valid1 = 0, valid2 = 0;
    for (unsigned bits = 0; bits < 1; ++bits)
      if (oracle_is_topology(1, bits)) ++valid1;
    for (unsigned bits = 0; bits < 4; ++bits)
      if (oracle_is_topology(2, bits)) ++valid2;
    CHECK(valid1 == 1);
    CHECK(valid2 == 4);
  }
}

namespace {

std::vector<FiniteSpace> all_spaces_up_to(int max_points) {
  std::vector<FiniteSpace> spaces;
  for (int n = 1; n <= max_points; ++n) {
    const unsigned candidates = 1u << ((1u << n) - 2);
    for (unsigned bits = 0; bits < candidates; ++bits) {
      if (!oracle_is_topology(n, bits)) continue;
      spaces.emplace_back(points_of(n), family_from_bits(n, bits));
    }
  }
  return spaces;
}

std::vector<ContinuousMap> continuous_injections(const FiniteSpace& from,
                                                 const FiniteSpace& to) {
  std::vector<ContinuousMap> maps;
  const auto& src = from.points();
  const auto& dst = to.points();
  if (src.size() > dst.size()) return maps;
  // Odometer over all functions, filtered to injective and continuous.
  std::vector<std::size_t> idx(src.size(), 0);
  while (true) {
    bool injective = true;
    for (std::size_t i = 0; i < idx.size() && injective; ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j)
        if (idx[i] == idx[j]) {
          injective = false;
          break;
        }
    if (injective) {
      std::map<std::string, std::string> table;
      for (std::size_t i = 0; i < src.size(); ++i) table.emplace(src[i], dst[idx[i]]);
      try {
        maps.emplace_back(from, to, std::move(table));
      } catch (const ValidationError&) {
      }
    }
    std::size_t pos = idx.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < dst.size()) {
        done = false;
        break;
      }
      idx[pos] = 0;
    }
    if (done) break;
  }
  return maps;
}

}  // namespace

TEST_CASE("injectivity and embedding transfer across composites, exhaustively") {
  // Over every triple of spaces on at most three points and all continuous
  // injections f, g: if g∘f is a closed embedding and g is injective and
  // continuous, then f is an embedding. Also the set-level transfer: a
  // composable pair with injective composite has an injective inner map.
  const std::vector<FiniteSpace> spaces = all_spaces_up_to(3);
  REQUIRE(spaces.size() == 34);  // 1 + 4 + 29

  std::size_t fired = 0;
  for (const auto& X : spaces) {
    for (const auto& Y : spaces) {
      const auto fs = continuous_injections(X, Y);
      if (fs.empty()) continue;
      for (const auto& Z : spaces) {
        const auto gs = continuous_injections(Y, Z);
        for (const auto& g : gs) {
          for (const auto& f : fs) {
            const ContinuousMap gf = compose(g, f);
            CHECK(gf.is_injective());  // injections compose
            if (is_closed_embedding(gf)) {
              ++fired;
              CHECK(is_embedding(f));
            }
          }
        }
      }
    }
  }
  CHECK(fired > 0);
}

TEST_CASE("closure operator is monotone and idempotent") {
  // Every topology on up to three points, every subset. (Four-point spaces
  // are exercised in the acceptance suite's sampled run.)
  for (const auto& space : all_spaces_up_to(3)) {
    const std::uint64_t full = space.full_mask();
    for (std::uint64_t a = 0; a <= full; ++a) {
      const std::uint64_t ca = closure_mask(a, space);
      CHECK((ca & a) == a);                          // extensive
      CHECK(closure_mask(ca, space) == ca);          // idempotent
      CHECK(space.is_open_mask(full & ~ca));         // closures are closed
      for (std::uint64_t b = a; b <= full; ++b) {
        if ((a & b) != a) continue;  // only a subset-of b
        CHECK((ca & closure_mask(b, space)) == ca);  // monotone
      }
    }
  }
}

TEST_CASE("composition of continuous maps never fails validation") {
  const std::vector<FiniteSpace> spaces = all_spaces_up_to(2);
  for (const auto& X : spaces)
    for (const auto& Y : spaces)
      for (const auto& Z : spaces)
        for (const auto& f : continuous_injections(X, Y))
          for (const auto& g : continuous_injections(Y, Z))
            CHECK_NOTHROW(compose(g, f));
}
