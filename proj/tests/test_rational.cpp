#include <hmfree/error.hpp>
#include <hmfree/rational.hpp>

#include <doctest.h>

#include <random>

using namespace hmfree;

TEST_CASE("rational parse and format") {
  CHECK(parse_rational("1/2") == rational(1, 2));
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("-3/6") == rational(-1, 2));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(to_string(rational(1, 2)) == "1/2");
  CHECK(to_string(rational(4, 2)) == "2");
  CHECK(to_string(rational(-2, 4)) == "-1/2");

  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_rational("abc"), ValidationError);
  CHECK_THROWS_AS(parse_rational(""), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), ValidationError);
  CHECK_THROWS_AS(rational(1, 0), ValidationError);
}

TEST_CASE("rational canonical form: reduced, positive denominator") {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const long long num = static_cast<long long>(rng() % 2001) - 1000;
    const long long den = static_cast<long long>(rng() % 999) + 1;
    const Rational q = rational(num, (rng() % 2) ? den : -den);
    CHECK(denominator(q) > 0);
    CHECK(gcd(abs(numerator(q)), denominator(q)) == 1);
    CHECK(parse_rational(to_string(q)) == q);
  }
}
