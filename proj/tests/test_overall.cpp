#include <catch2/catch_amalgamated.hpp>

#include "domlab/overall.hpp"
#include "oracles.hpp"

using namespace domlab;

namespace {
SimpleProspect basic_gamble() {
  return SimpleProspect({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
}
SimpleProspect null_option() { return SimpleProspect({{0.0, 1}}); }
}  // namespace

TEST_CASE("overall ccdf is the payoff-weighted mixture of shifted tails") {
  auto b = make_cauchy(0, 10);
  OverallProspect o{basic_gamble(), b};
  for (double x : {-30.0, -2.0, 0.0, 1.5, 40.0}) {
    double want = 0.5 * b.ccdf(x + 1) + 0.5 * b.ccdf(x - 2);
    CHECK(std::abs(o.ccdf(x) - want) < 1e-14);
    CHECK(std::abs(o.cdf(x) + o.ccdf(x) - 1) < 1e-14);
  }
}

TEST_CASE("ccdf gap matches direct convolution quadrature") {
  auto b = make_cauchy(0, 10);
  auto g = basic_gamble(), n = null_option();
  for (double x : {-25.0, -1.0, 0.0, 0.7, 3.0, 50.0}) {
    double got = ccdf_gap(g, n, b, x);
    double want = oracles::gap_by_quadrature(g, n, b, x);
    CHECK(std::abs(got - want) < 1e-10);
    // and equals the difference of the overall CCDFs
    OverallProspect oi{g, b}, oj{n, b};
    CHECK(std::abs(got - (oi.ccdf(x) - oj.ccdf(x))) < 1e-14);
  }
}

TEST_CASE("even-odds gamble dominates null under Cauchy(0,10)") {
  auto cert = dominates(basic_gamble(), null_option(), make_cauchy(0, 10));
  CHECK(cert.verdict == Verdict::Dominates);
  CHECK(cert.min_gap > 0);
  CHECK_FALSE(cert.decided_in_vacuum);
  // factor of 2 between pdf values over a span-3 window is satisfied here,
  // so the ratio-based sufficient condition agrees with the verdict
  auto b = make_cauchy(0, 10);
  double worst = 0;
  for (double x = -200; x <= 200; x += 0.25)
    worst = std::max(worst, b.pdf(x) / b.pdf(x + 2.999));
  CHECK(worst < 2.0);
}

TEST_CASE("reverse comparison yields DominatedBy") {
  auto cert = dominates(null_option(), basic_gamble(), make_cauchy(0, 10));
  CHECK(cert.verdict == Verdict::DominatedBy);
  CHECK(cert.max_gap < 0);
}

TEST_CASE("identical prospects are Neither") {
  auto cert = dominates(basic_gamble(), basic_gamble(), make_cauchy(0, 10));
  CHECK(cert.verdict == Verdict::Neither);
}

TEST_CASE("vacuum dominance transfers to every background") {
  SimpleProspect lo({{0.0, Rational(1, 2)}, {1.0, Rational(1, 2)}});
  SimpleProspect hi({{0.0, Rational(1, 4)}, {1.0, Rational(3, 4)}});
  for (const auto& b :
       {make_laplace(0, 5), make_cauchy(0, 5), make_gaussian(0, 5)}) {
    auto cert = dominates(hi, lo, b);
    CHECK(cert.verdict == Verdict::Dominates);
    CHECK(cert.decided_in_vacuum);
  }
}

TEST_CASE("dominance requires a higher expectation") {
  // expectational necessity: if E[oi] <= E[oj], oi cannot dominate
  SimpleProspect a({{-1.0, Rational(1, 2)}, {1.0, Rational(1, 2)}});
  SimpleProspect b({{0.0, 1}});  // equal expectations
  for (const auto& bg : {make_laplace(0, 50), make_cauchy(0, 50)}) {
    auto cert = dominates(a, b, bg);
    CHECK(cert.verdict != Verdict::Dominates);
    auto rev = dominates(b, a, bg);
    CHECK(rev.verdict != Verdict::Dominates);
  }
}

TEST_CASE("thin-tailed backgrounds do not rescue a negative-delta region") {
  // under a Gaussian background the even-odds gamble still fails against
  // null: the gap goes negative in the far left tail
  auto cert = dominates(basic_gamble(), null_option(), make_gaussian(0, 10));
  CHECK(cert.verdict == Verdict::Neither);
  CHECK(cert.min_gap < 0);
  CHECK(cert.wide_grid_fallback);
}

TEST_CASE("gap sign flips with the comparison order") {
  auto b = make_laplace(0, 166.9);
  auto g = basic_gamble(), n = null_option();
  for (double x : {-3.0, 0.0, 2.5})
    CHECK(std::abs(ccdf_gap(g, n, b, x) + ccdf_gap(n, g, b, x)) < 1e-15);
}

TEST_CASE("scan bounds cover the payoff span") {
  SimpleProspect wide({{-1000.0, Rational(1, 2)}, {1e6, Rational(1, 2)}});
  auto cert = dominates(wide, null_option(), make_laplace(0, 166.9));
  CHECK(cert.scan_lo < -1000);
  CHECK(cert.scan_hi > 1e6);
}

TEST_CASE("near-tangent comparisons come back Inconclusive, not Dominates") {
  // at the exact dominance threshold the normalized gap touches zero
  auto b = make_laplace(0, laplace_scale_from_ci95(500));
  // threshold for the generalized gamble is ~.2522557938; probe right at it
  Rational p = rational_from_double(0.2522557938);
  SimpleProspect at({{-1.0, Rational(1, 2)},
                     {0.0, Rational(1, 2) - p},
                     {2.0, p}});
  auto cert = dominates(at, null_option(), b);
  CHECK(cert.verdict != Verdict::Dominates);

  // clearly above and clearly below resolve
  SimpleProspect above({{-1.0, Rational(1, 2)},
                        {0.0, Rational(1, 2) - Rational(26, 100)},
                        {2.0, Rational(26, 100)}});
  CHECK(dominates(above, null_option(), b).verdict == Verdict::Dominates);
  // between the two one-sided thresholds (~.2484 and ~.2523) neither side wins
  SimpleProspect between({{-1.0, Rational(1, 2)},
                          {0.0, Rational(1, 2) - Rational(25, 100)},
                          {2.0, Rational(25, 100)}});
  CHECK(dominates(between, null_option(), b).verdict == Verdict::Neither);
  // far enough below, the null option dominates the gamble outright
  SimpleProspect below({{-1.0, Rational(1, 2)},
                        {0.0, Rational(1, 2) - Rational(24, 100)},
                        {2.0, Rational(24, 100)}});
  CHECK(dominates(below, null_option(), b).verdict == Verdict::DominatedBy);
}

TEST_CASE("huge payoff spans stay within the scan budget") {
  // Pascalian regions: payoff far outside any fixed grid. The up-front cost
  // of 20 exceeds the largest price a 1% prize can dominate at this scale
  // (-1000 ln(.99) ~ 10.05), so no prize magnitude rescues dominance.
  SimpleProspect pasc({{-20.0, Rational(1, 2)},
                       {0.0, Rational(1, 2) - Rational(1, 100)},
                       {1e15, Rational(1, 100)}});
  auto b = make_laplace(0, 1000);
  auto cert = dominates(pasc, null_option(), b);
  CHECK(cert.verdict == Verdict::Neither);
  CHECK(cert.min_gap < 0);
  CHECK(cert.scan_hi > 1e15);

  // bringing the cost under the wager price restores dominance even with the
  // prize fifteen orders of magnitude out
  SimpleProspect cheap({{-1.0, Rational(1, 2)},
                        {0.0, Rational(1, 2) - Rational(1, 100)},
                        {1e15, Rational(1, 100)}});
  CHECK(dominates(cheap, null_option(), b).verdict == Verdict::Dominates);
}

TEST_CASE("dominance is invariant under background translation") {
  auto g = basic_gamble(), n = null_option();
  for (double shift : {-1e4, 0.0, 3.7, 1e5}) {
    auto cert = dominates(g, n, make_cauchy(shift, 10));
    CHECK(cert.verdict == Verdict::Dominates);
  }
}
