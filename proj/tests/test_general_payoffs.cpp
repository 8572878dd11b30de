#include <catch2/catch_amalgamated.hpp>

#include "domlab/general_payoffs.hpp"

using namespace domlab;
using GP = GeneralPayoff;

TEST_CASE("partial order on extended reals") {
  CHECK(general_compare(GP::minus_inf(), GP::finite(-1e308)) ==
        std::partial_ordering::less);
  CHECK(general_compare(GP::finite(3), GP::finite(3)) ==
        std::partial_ordering::equivalent);
  CHECK(general_compare(GP::finite(4), GP::finite(3)) ==
        std::partial_ordering::greater);
  CHECK(general_compare(GP::plus_inf(), GP::plus_inf()) ==
        std::partial_ordering::equivalent);
  CHECK(general_compare(GP::minus_inf(), GP::plus_inf()) ==
        std::partial_ordering::less);
}

TEST_CASE("ordinals compare by rank; incomparables only within a family") {
  CHECK(general_compare(GP::ordinal(2), GP::ordinal(3)) ==
        std::partial_ordering::less);
  CHECK(general_compare(GP::ordinal(2), GP::ordinal(2)) ==
        std::partial_ordering::equivalent);
  // unranked undefined magnitude: equivalent to itself, unordered otherwise
  CHECK(general_compare(GP::incomparable(0), GP::incomparable(0)) ==
        std::partial_ordering::equivalent);
  CHECK(general_compare(GP::incomparable(0), GP::finite(10)) ==
        std::partial_ordering::unordered);
  CHECK(general_compare(GP::incomparable(0), GP::plus_inf()) ==
        std::partial_ordering::unordered);
  // ranked members of one family form a chain
  CHECK(general_compare(GP::incomparable(0, 1), GP::incomparable(0, 2)) ==
        std::partial_ordering::less);
  // across families, or ranked vs unranked, nothing is ordered
  CHECK(general_compare(GP::incomparable(1, 2), GP::incomparable(2, 1)) ==
        std::partial_ordering::unordered);
  CHECK(general_compare(GP::incomparable(0, 1), GP::incomparable(0)) ==
        std::partial_ordering::unordered);
}

TEST_CASE("prospect construction enforces mass and domain rules") {
  CHECK_THROWS_AS(GeneralProspect({{GP::finite(1), Rational(1, 2)}}),
                  ProbabilitySum);
  CHECK_THROWS_AS(GeneralProspect({{GP::finite(1), Rational(1, 2)},
                                   {GP::ordinal(1), Rational(1, 2)}}),
                  MixedDomain);
  // infinities and incomparables mix freely with finite payoffs
  CHECK_NOTHROW(GeneralProspect({{GP::finite(1), Rational(1, 2)},
                                 {GP::plus_inf(), Rational(1, 4)},
                                 {GP::incomparable(0), Rational(1, 4)}}));
}

TEST_CASE("cross-domain comparison is rejected") {
  GeneralProspect ord({{GP::ordinal(1), 1}});
  GeneralProspect fin({{GP::finite(0), 1}});
  CHECK_THROWS_AS(general_dominates(ord, fin), MixedDomain);
}

TEST_CASE("general dominance over finite payoffs matches the vacuum rule") {
  GeneralProspect lo({{GP::finite(1), Rational(1, 2)},
                      {GP::finite(3), Rational(1, 2)}});
  GeneralProspect hi({{GP::finite(1), Rational(1, 4)},
                      {GP::finite(3), Rational(3, 4)}});
  CHECK(general_dominates(hi, lo));
  CHECK_FALSE(general_dominates(lo, hi));
  CHECK_FALSE(general_dominates(lo, lo));
}

TEST_CASE("general dominance is irreflexive, asymmetric, and transitive") {
  // exhaustive-ish sweep: prospects with <= 3 outcomes on payoffs {0,1,2},
  // probabilities in eighths
  std::vector<GeneralProspect> ps;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b) {
      int c = 8 - a - b;
      std::vector<std::pair<GeneralPayoff, Rational>> outs;
      if (a) outs.push_back({GP::finite(0), Rational(a, 8)});
      if (b) outs.push_back({GP::finite(1), Rational(b, 8)});
      if (c) outs.push_back({GP::finite(2), Rational(c, 8)});
      ps.emplace_back(std::move(outs));
    }
  auto dom = [&](size_t i, size_t j) { return general_dominates(ps[i], ps[j]); };
  for (size_t i = 0; i < ps.size(); ++i) {
    CHECK_FALSE(dom(i, i));
    for (size_t j = 0; j < ps.size(); ++j) {
      if (dom(i, j)) CHECK_FALSE(dom(j, i));
      for (size_t k = 0; k < ps.size(); ++k)
        if (dom(i, j) && dom(j, k)) CHECK(dom(i, k));
    }
  }
}

TEST_CASE("adding one to every payoff dominates the original") {
  GeneralProspect base({{GP::finite(-2), Rational(1, 4)},
                        {GP::finite(0), Rational(1, 2)},
                        {GP::finite(7), Rational(1, 4)}});
  GeneralProspect up({{GP::finite(-1), Rational(1, 4)},
                      {GP::finite(1), Rational(1, 2)},
                      {GP::finite(8), Rational(1, 4)}});
  CHECK(general_dominates(up, base));
}

TEST_CASE("countable prospect generators") {
  auto sp = CountableProspect::st_petersburg();
  auto t = sp.terms(4);
  REQUIRE(t.size() == 4);
  CHECK(t[0] == CountableProspect::Term{2.0, Rational(1, 2)});
  CHECK(t[3] == CountableProspect::Term{16.0, Rational(1, 16)});
  CHECK(sp.tail(4) == Rational(1, 16));

  auto pa = CountableProspect::pasadena();
  auto q = pa.terms(4);
  CHECK(q[0].first == 2.0);
  CHECK(q[1].first == -2.0);
  CHECK(q[2].first == 8.0 / 3.0);
  CHECK(q[3].first == -4.0);

  auto fin = CountableProspect::from_finite(SimpleProspect({{100.0, 1}}));
  CHECK(fin.terms(64).size() == 1);
  CHECK(fin.tail(1) == 0);
}

TEST_CASE("sweetened countable games dominate at depth 64") {
  CHECK(countable_dominates(CountableProspect::st_petersburg(1),
                            CountableProspect::st_petersburg(), 64) ==
        CountableVerdict::Dominates);
  CHECK(countable_dominates(CountableProspect::pasadena(1),
                            CountableProspect::pasadena(), 64) ==
        CountableVerdict::Dominates);
}

TEST_CASE("countable games against sure things are Neither") {
  auto sure = CountableProspect::from_finite(SimpleProspect({{100.0, 1}}));
  CHECK(countable_dominates(CountableProspect::st_petersburg(), sure, 64) ==
        CountableVerdict::Neither);
  CHECK(countable_dominates(sure, CountableProspect::st_petersburg(), 64) ==
        CountableVerdict::Neither);
  CHECK(countable_dominates(CountableProspect::pasadena(), sure, 64) ==
        CountableVerdict::Neither);
}

TEST_CASE("countable verdicts are stable in depth once certified") {
  for (int d : {16, 24, 32, 48, 64, 96})
    CHECK(countable_dominates(CountableProspect::st_petersburg(1),
                              CountableProspect::st_petersburg(), d) ==
          CountableVerdict::Dominates);
  auto sure = CountableProspect::from_finite(SimpleProspect({{100.0, 1}}));
  for (int d : {16, 32, 64})
    CHECK(countable_dominates(CountableProspect::st_petersburg(), sure, d) ==
          CountableVerdict::Neither);
}

TEST_CASE("shallow truncation refutes both directions of StP vs a sure 3") {
  // even at depth 2 the crossing is certified: the sure 3 beats the payoff 2
  // branch, and the payoff-4 branch beats the sure 3
  auto sure = CountableProspect::from_finite(SimpleProspect({{3.0, 1}}));
  CHECK(countable_dominates(CountableProspect::st_petersburg(), sure, 2) ==
        CountableVerdict::Neither);
}

TEST_CASE("uncertifiable comparisons report Undecided at any depth") {
  // StP truly dominates a sure 1, but certifying the threshold at x = 1
  // would require knowing that every tail payoff exceeds 1 — information a
  // truncation plus a tail-mass bound cannot provide.
  auto sure1 = CountableProspect::from_finite(SimpleProspect({{1.0, 1}}));
  for (int d : {2, 16, 64})
    CHECK(countable_dominates(CountableProspect::st_petersburg(), sure1, d) ==
          CountableVerdict::Undecided);
}

TEST_CASE("tail mass on the dominated side blocks certification") {
  // every realized payoff of the truncated game sits below 100, but its tail
  // mass may not: a sure 100 must not be certified dominant
  auto sure100 = CountableProspect::from_finite(SimpleProspect({{100.0, 1}}));
  CHECK(countable_dominates(sure100, CountableProspect::st_petersburg(), 2) !=
        CountableVerdict::Dominates);
}

TEST_CASE("case suite: all fourteen verdicts match") {
  auto cases = case_suite();
  REQUIRE(cases.size() == 14);
  for (const auto& c : cases) {
    INFO("case " << c.number << " (" << c.name << ")");
    CHECK(c.match);
  }
  CHECK(cases[0].comparisons[0].computed == "Neither");
  CHECK(cases[2].comparisons[0].computed == "Dominates");  // wager, regular
  CHECK(cases[13].comparisons[0].computed == "Dominates");
}
