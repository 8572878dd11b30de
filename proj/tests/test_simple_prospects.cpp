#include <catch2/catch_amalgamated.hpp>

#include "domlab/simple_prospect.hpp"
#include "domlab/rational.hpp"

using namespace domlab;

TEST_CASE("rationals from doubles are exact") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1) != Rational(1, 10));  // 0.1 is not dyadic
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
  CHECK(rational_from_double(-3.0) == Rational(-3));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2") == Rational(2));
  CHECK_THROWS(parse_rational("one half"));
}

TEST_CASE("prospect construction merges duplicates and validates mass") {
  SimpleProspect p({{2.0, Rational(1, 4)},
                    {2.0, Rational(1, 4)},
                    {-1.0, Rational(1, 2)},
                    {5.0, 0}});
  REQUIRE(p.outcomes().size() == 2);
  CHECK(p.outcomes()[0].payoff == -1.0);
  CHECK(p.outcomes()[1].prob == Rational(1, 2));
  CHECK_THROWS_AS(SimpleProspect({{0.0, Rational(9, 10)}}), ProbabilitySum);
  CHECK_THROWS(SimpleProspect({{0.0, Rational(-1, 2)}, {1.0, Rational(3, 2)}}));
}

TEST_CASE("ccdf and expectation are exact") {
  SimpleProspect g({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
  CHECK(g.ccdf(-1.0) == 1);
  CHECK(g.ccdf(-0.5) == Rational(1, 2));
  CHECK(g.ccdf(2.0) == Rational(1, 2));
  CHECK(g.ccdf(2.5) == 0);
  CHECK(g.expectation_exact() == Rational(1, 2));
}

TEST_CASE("delta function of the even-odds gamble vs null") {
  SimpleProspect g({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
  SimpleProspect n({{0.0, 1}});
  DeltaFunction d(g, n);
  REQUIRE(d.breakpoints() == std::vector<double>{-1, 0, 2});
  CHECK(d.value_at(-0.5) == Rational(-1, 2));  // on (-1, 0]
  CHECK(d.value_at(0.0) == Rational(-1, 2));
  CHECK(d.value_at(1.0) == Rational(1, 2));    // on (0, 2]
  CHECK(d.value_at(2.0) == Rational(1, 2));
  CHECK(d.value_at(-2.0) == 0);
  CHECK(d.value_at(3.0) == 0);
  CHECK(d.support_range() == 3.0);
  CHECK(d.integral() == 0.5);                  // expectation difference
  CHECK(d.integral_positive_part() == 1.0);
  CHECK(d.integral_negative_part() == 0.5);
  CHECK(d.max_value() == Rational(1, 2));
}

TEST_CASE("delta is antisymmetric") {
  SimpleProspect a({{-3.0, Rational(1, 8)},
                    {0.5, Rational(5, 8)},
                    {4.0, Rational(1, 4)}});
  SimpleProspect b({{-1.0, Rational(3, 4)}, {6.0, Rational(1, 4)}});
  DeltaFunction dab(a, b), dba(b, a);
  REQUIRE(dab.breakpoints() == dba.breakpoints());
  for (size_t k = 0; k < dab.values().size(); ++k)
    CHECK(dab.values()[k] == -dba.values()[k]);
  CHECK(dab.integral() == -dba.integral());
}

TEST_CASE("delta integral equals the expectation difference") {
  SimpleProspect a({{-2.5, Rational(1, 4)}, {1.0, Rational(3, 4)}});
  SimpleProspect b({{-1.0, Rational(1, 2)}, {3.0, Rational(1, 2)}});
  double want = a.expectation() - b.expectation();
  CHECK(std::abs(DeltaFunction(a, b).integral() - want) < 1e-14);
}

TEST_CASE("vacuum dominance") {
  SimpleProspect lo({{1.0, Rational(1, 2)}, {3.0, Rational(1, 2)}});
  SimpleProspect hi({{1.0, Rational(1, 4)}, {3.0, Rational(3, 4)}});
  CHECK(dominates_in_vacuum(hi, lo));
  CHECK_FALSE(dominates_in_vacuum(lo, hi));
  CHECK_FALSE(dominates_in_vacuum(lo, lo));  // never against itself

  // shifting every payoff up dominates the original
  SimpleProspect up({{2.0, Rational(1, 2)}, {4.0, Rational(1, 2)}});
  CHECK(dominates_in_vacuum(up, lo));

  // crossing CCDFs: neither dominates
  SimpleProspect wide({{-10.0, Rational(1, 2)}, {10.0, Rational(1, 2)}});
  SimpleProspect tight({{0.0, 1}});
  CHECK_FALSE(dominates_in_vacuum(wide, tight));
  CHECK_FALSE(dominates_in_vacuum(tight, wide));
}

TEST_CASE("pascalian transform preserves expectation and concentrates mass") {
  SimpleProspect g({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
  auto t = pascalian_transform(g, Rational(1000), PascalSide::Positive);
  CHECK(t.expectation_exact() == g.expectation_exact());
  CHECK(t.max_payoff() == 2000.0);
  CHECK(t.ccdf(2000.0) == Rational(1, 2000));
  CHECK(t.ccdf(0.5) == Rational(1, 2000));
  // slack mass landed at zero
  CHECK(t.ccdf(0.0) - t.ccdf(0.5) == Rational(1, 2) - Rational(1, 2000));

  auto neg = pascalian_transform(g, Rational(10), PascalSide::Negative);
  CHECK(neg.expectation_exact() == g.expectation_exact());
  CHECK(neg.min_payoff() == -10.0);

  CHECK_THROWS_AS(pascalian_transform(g, Rational(1), PascalSide::Positive),
                  InvalidFactor);
  CHECK_THROWS_AS(pascalian_transform(g, Rational(1, 2), PascalSide::Positive),
                  InvalidFactor);
}

TEST_CASE("repeated pascalian transforms compose") {
  SimpleProspect g({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
  auto once = pascalian_transform(g, Rational(4), PascalSide::Positive);
  auto twice = pascalian_transform(once, Rational(25), PascalSide::Positive);
  auto direct = pascalian_transform(g, Rational(100), PascalSide::Positive);
  CHECK(twice == direct);
}
