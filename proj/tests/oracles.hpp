#pragma once

// Independent recomputations used to cross-check the library's closed forms.
// Everything here is deliberately slow and simple: brute-force quadrature and
// grid scans with no shared code paths beyond the pdf/quantile primitives.

#include <cmath>
#include <vector>

#include "domlab/background.hpp"
#include "domlab/numeric.hpp"
#include "domlab/simple_prospect.hpp"

namespace oracles {

using domlab::Background;
using domlab::DeltaFunction;
using domlab::SimpleProspect;

// CCDF gap by direct convolution: integral of pdf(y) * Delta(x - y) dy,
// piecewise over the Delta intervals.
inline double gap_by_quadrature(const SimpleProspect& oi,
                                const SimpleProspect& oj, const Background& b,
                                double x, double tol = 1e-13) {
  DeltaFunction d(oi, oj);
  const auto& bp = d.breakpoints();
  double total = 0;
  for (size_t k = 0; k + 1 < bp.size(); ++k) {
    double w = domlab::to_double(d.values()[k]);
    if (w == 0) continue;
    // y ranges where x - y lies in (bp[k], bp[k+1]]
    total += w * domlab::num::adaptive_simpson(
                     [&](double y) { return b.pdf(y); }, x - bp[k + 1],
                     x - bp[k], tol);
  }
  return total;
}

// Shortest 50%-mass interval by scanning the lower quantile.
inline double scale_factor_by_scan(const Background& b, size_t points = 20000) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t k = 1; k < points; ++k) {
    double q = 0.5 * double(k) / double(points);
    best = std::min(best, b.quantile(q + 0.5) - b.quantile(q));
  }
  return best;
}

// Max pdf ratio at separations below `span`, by brute 2-D scan around the
// mode.
inline double rate_by_scan(const Background& b, double span,
                           size_t points = 3000) {
  double sf = b.scale_factor(), m = b.mode();
  double lo = m - 30 * sf, hi = m + 30 * sf;
  double best = 1;
  double sep = span * (1 - 1e-9);
  for (size_t k = 0; k < points; ++k) {
    double x = lo + (hi - lo) * double(k) / double(points - 1);
    for (double s : {sep, 0.5 * sep, 0.25 * sep}) {
      double top = b.pdf(x), bot = b.pdf(x + s);
      if (bot > 0) best = std::max(best, top / bot);
      if (top > 0) best = std::max(best, bot / top);
    }
  }
  return best;
}

// Empirical CDF from inverse-transform samples with a simple LCG; used only
// to sanity-check quantile/cdf consistency, not for precision.
inline double empirical_cdf(const Background& b, double x, size_t n,
                            std::uint64_t seed) {
  std::uint64_t state = seed;
  size_t hits = 0;
  for (size_t k = 0; k < n; ++k) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    double u = (double(state >> 11) + 0.5) * 0x1p-53;
    if (b.quantile(u) <= x) ++hits;
  }
  return double(hits) / double(n);
}

namespace frozen {
// Scale parameters implied by a [-500, 500] central 95% interval.
inline constexpr double laplace_rho = 166.90410034766703;   // -500/ln(.05)
inline constexpr double cauchy_gamma = 39.35085341230919;   // -500*cot(.525*pi)
// Dominance thresholds for the generalized gambles under those backgrounds.
inline constexpr double g_prime_laplace = 0.2522557938;
inline constexpr double g_dprime_laplace = 0.0030047434;
inline constexpr double g_prime_cauchy = 0.2596914201;
inline constexpr double g_dprime_cauchy = 0.0094522815;
// Minimum price of a 1% unbounded-prize wager, Laplace scale 1000:
// -1000 * ln(.99).
inline constexpr double wager_price = 10.050335853501441;
// Shortest 50% intervals: Laplace(0,1), Cauchy(0,1), Gaussian(0,1).
inline constexpr double sf_laplace1 = 1.3862943611198906;  // 2 ln 2
inline constexpr double sf_cauchy1 = 2.0;
inline constexpr double sf_gauss1 = 1.3489795003921634;    // 2 z_{.75}
}  // namespace frozen

}  // namespace oracles
