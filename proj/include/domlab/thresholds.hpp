#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "domlab/bounds.hpp"
#include "domlab/overall.hpp"

namespace domlab {

// A one-parameter gamble family: a prospect template whose designated free
// outcome carries probability p and whose slack outcome absorbs the rest.
// Larger p must weakly improve the family (checked on construction by a
// spot vacuum comparison).
class GambleFamily {
 public:
  GambleFamily(std::vector<Outcome> fixed, double free_payoff,
               double slack_payoff)
      : fixed_(std::move(fixed)),
        free_payoff_(free_payoff),
        slack_payoff_(slack_payoff) {
    Rational used = 0;
    for (const auto& o : fixed_) used += o.prob;
    if (used >= 1)
      throw std::invalid_argument("gamble family: no free probability mass");
    p_max_ = 1 - used;
    // monotonicity spot check
    Rational p1 = p_max_ / 3, p2 = p_max_ * 2 / 3;
    if (!dominates_in_vacuum(instantiate(p2), instantiate(p1)))
      throw std::invalid_argument(
          "gamble family: raising p does not improve the prospect");
  }

  const Rational& p_max() const { return p_max_; }
  double free_payoff() const { return free_payoff_; }
  double slack_payoff() const { return slack_payoff_; }
  const std::vector<Outcome>& fixed() const { return fixed_; }

  SimpleProspect instantiate(const Rational& p) const {
    if (p < 0 || p > p_max_)
      throw std::invalid_argument("gamble family: p out of range");
    std::vector<Outcome> out = fixed_;
    if (p > 0) out.push_back({free_payoff_, p});
    if (p < p_max_) out.push_back({slack_payoff_, p_max_ - p});
    return SimpleProspect(std::move(out));
  }
  SimpleProspect instantiate(double p) const {
    return instantiate(rational_from_double(p));
  }

 private:
  std::vector<Outcome> fixed_;
  double free_payoff_, slack_payoff_;
  Rational p_max_;
};

struct ThresholdResult {
  double value = 0;                  // agreed threshold
  std::optional<double> method_a;    // closed-form ratio supremum, if applicable
  double method_b = 0;               // verdict bisection
  int iterations = 0;
  double tolerance = 0;
};

struct NoThreshold : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// The two-offset pattern: opponent is a point mass at w, the family has one
// fixed outcome below w and its free outcome above. Dominance then reduces to
//   forall x:  p * (F(x - w) - F(x - v+)) > q * (F(x - v-) - F(x - w))
// so the threshold is the supremum of the increment ratio.
inline std::optional<double> ratio_supremum(const GambleFamily& fam,
                                            const SimpleProspect& opponent,
                                            const Background& b) {
  if (opponent.outcomes().size() != 1 || fam.fixed().size() != 1)
    return std::nullopt;
  double w = opponent.outcomes()[0].payoff;
  if (fam.slack_payoff() != w) return std::nullopt;
  double vneg = fam.fixed()[0].payoff;
  double vpos = fam.free_payoff();
  if (!(vneg < w && w < vpos)) return std::nullopt;
  double q = to_double(fam.fixed()[0].prob);

  auto ratio = [&](double x) {
    double den = b.cdf_increment(x - vpos, x - w);
    if (den <= 0) return 0.0;
    return q * b.cdf_increment(x - w, x - vneg) / den;
  };
  double sf = b.scale_factor(), m = b.mode();
  std::vector<double> grid;
  for (double u : {vneg, w, vpos}) {
    auto pts = num::linspace(m + u - 40 * sf, m + u + 40 * sf, 8192);
    grid.insert(grid.end(), pts.begin(), pts.end());
  }
  num::sort_unique(grid);
  std::erase_if(grid, [&](double x) {
    return b.cdf_increment(x - vpos, x - w) <= 0;
  });
  return num::refine_max(ratio, grid, 1e-11 * sf).value;
}

}  // namespace detail

// inf{p : fam(p) stochastically dominates the opponent under b}. Runs the
// closed-form ratio supremum (when the family matches the two-offset
// pattern) and verdict bisection, and requires them to agree to 1e-4.
inline ThresholdResult dominance_threshold(const GambleFamily& fam,
                                           const SimpleProspect& opponent,
                                           const Background& b,
                                           double p_tol = 1e-7) {
  ThresholdResult res;
  res.tolerance = p_tol;
  double pmax = to_double(fam.p_max());
  auto dominant = [&](double p) {
    return dominates(fam.instantiate(p), opponent, b).verdict ==
           Verdict::Dominates;  // Inconclusive counts as not dominant
  };
  if (!dominant(pmax))
    throw NoThreshold("family does not dominate even at p_max");
  double lo = 0, hi = pmax;
  while (hi - lo > p_tol) {
    double mid = 0.5 * (lo + hi);
    if (dominant(mid))
      hi = mid;
    else
      lo = mid;
    ++res.iterations;
  }
  res.method_b = hi;
  res.method_a = detail::ratio_supremum(fam, opponent, b);
  if (res.method_a) {
    if (std::abs(*res.method_a - res.method_b) > 1e-4)
      throw MethodDisagreement(
          "dominance_threshold: ratio supremum and bisection disagree");
    res.value = *res.method_a;  // the sharper of the two
  } else {
    res.value = res.method_b;
  }
  return res;
}

// Minimum price for a wager {(0, 1-p), (+inf, p)} against a sure payoff t:
// the wager dominates iff F(x - t) >= (1-p) F(x) for all x, with the
// threshold at  t : min_x (F(x - t) - (1-p) F(x)) = 0. Infinite payoffs
// never enter the numerics; the condition is this CDF inequality.
inline double wager_minimum_price(double p, const Background& b,
                                  double rel_tol = 1e-9) {
  if (!(p > 0 && p < 1))
    throw std::invalid_argument("wager probability must be in (0,1)");
  double sf = b.scale_factor(), m = b.mode();
  auto violated = [&](double t) {
    auto f = [&](double x) { return b.cdf(x - t) - (1 - p) * b.cdf(x); };
    auto grid = num::linspace(m - 80 * sf - t, m + 80 * sf + t, 8192);
    auto worst = num::refine_min(f, grid, 1e-11 * sf);
    return worst.value < 0;
  };
  double hi = sf;
  while (!violated(hi)) hi *= 2;
  double lo = 0;
  while (hi - lo > rel_tol * hi) {
    double mid = 0.5 * (lo + hi);
    if (violated(mid))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

enum class Truncation { Optimistic, Pessimistic };

// Doubling-payoff game truncated at `level` terms; the residual tail mass
// 2^-level goes to the top payoff (optimistic) or to payoff 0 (pessimistic).
// The infinite game dominates both, the optimistic variant being the tighter
// approximation from below; prices of both rise with level.
inline SimpleProspect st_petersburg_truncation(int level, Truncation mode) {
  if (level < 1) throw std::invalid_argument("truncation level must be >= 1");
  std::vector<Outcome> out;
  Rational half(1, 2), pk = half;
  for (int k = 1; k <= level; ++k) {
    double payoff = std::ldexp(1.0, k);  // 2^k
    Rational prob = pk;
    if (k == level && mode == Truncation::Optimistic) prob *= 2;  // absorb tail
    out.push_back({payoff, prob});
    pk *= half;
  }
  if (mode == Truncation::Pessimistic) out.push_back({0.0, pk * 2});
  return SimpleProspect(std::move(out));
}

struct StPetersburgRow {
  int level = 0;
  double price_optimistic = 0;
  double price_pessimistic = 0;
  double increment = 0;  // change in the optimistic price vs previous level
};

struct StPetersburgReport {
  std::vector<StPetersburgRow> rows;
  double price = 0;  // optimistic price at the deepest level
  bool converged = false;
};

// Largest sure payoff the truncated game still dominates.
inline double sure_thing_price(const SimpleProspect& game, const Background& b,
                               double rel_tol = 1e-6) {
  auto dominant = [&](double t) {
    return dominates(game, SimpleProspect({{t, 1}}), b).verdict ==
           Verdict::Dominates;
  };
  double lo = game.min_payoff() - 1;  // vacuum dominance down here
  double hi = game.expectation();     // expectational necessity above
  if (!dominant(lo)) return lo;
  while (hi - lo > rel_tol * std::max(1.0, std::abs(hi))) {
    double mid = 0.5 * (lo + hi);
    if (dominant(mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline StPetersburgReport st_petersburg_price(const Background& b,
                                              int truncation_level) {
  StPetersburgReport rep;
  double prev = 0;
  for (int n = 1; n <= truncation_level; ++n) {
    StPetersburgRow row;
    row.level = n;
    row.price_optimistic =
        sure_thing_price(st_petersburg_truncation(n, Truncation::Optimistic), b);
    row.price_pessimistic = sure_thing_price(
        st_petersburg_truncation(n, Truncation::Pessimistic), b);
    row.increment = n == 1 ? row.price_optimistic : row.price_optimistic - prev;
    prev = row.price_optimistic;
    rep.rows.push_back(row);
  }
  rep.price = prev;
  rep.converged = std::abs(rep.rows.back().increment) < 1e-3;
  return rep;
}

struct LongshotResult {
  double threshold = 0;   // minimal p at which L dominates the sure thing
  double lbt_floor = 0;   // below this p no payoff magnitude can succeed
  double inv_scale = 0;   // 1 / scale_factor(b), the order-of-magnitude yardstick
};

// Long-shot analysis: L = {(0, 1-p), (a, p)} against a sure payoff. The
// Lower Bound Theorem floor is U/(1+U) where U is the largest probability
// beta places on any interval of the sure payoff's width.
inline LongshotResult longshot_threshold(const SimpleProspect& sure, double a,
                                         const Background& b) {
  if (sure.outcomes().size() != 1)
    throw std::invalid_argument("longshot: opponent must be a sure thing");
  double w = sure.outcomes()[0].payoff;
  double sf = b.scale_factor();
  if (!(a > 10 * sf))
    throw std::invalid_argument("longshot payoff must exceed 10 scale factors");

  LongshotResult res;
  res.inv_scale = 1.0 / sf;

  double m = b.mode();
  auto umass = [&](double x) { return b.cdf_increment(x - w, x); };
  auto grid = num::linspace(m - 10 * sf, m + 10 * sf + w, 8192);
  double U = num::refine_max(umass, grid, 1e-11 * sf).value;
  res.lbt_floor = U / (1 + U);

  auto longshot = [&](double p) {
    return SimpleProspect(
        {{0.0, 1 - rational_from_double(p)}, {a, rational_from_double(p)}});
  };
  auto dominant = [&](double p) {
    return dominates(longshot(p), sure, b).verdict == Verdict::Dominates;
  };
  double hi = std::min(0.5, 4096.0 / sf);
  while (!dominant(hi)) {
    hi *= 2;
    if (hi > 1 - 1e-9)
      throw NoThreshold("longshot never dominates the sure thing");
  }
  res.threshold =
      num::bisect_predicate(dominant, res.lbt_floor * 0.5, hi, 0.0, 1e-4);
  return res;
}

}  // namespace domlab
