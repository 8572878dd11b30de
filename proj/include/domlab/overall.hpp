#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "domlab/background.hpp"
#include "domlab/numeric.hpp"
#include "domlab/simple_prospect.hpp"

namespace domlab {

// Overall prospect of an option under a background prospect: the mixture of
// background copies shifted by each simple payoff.
struct OverallProspect {
  SimpleProspect option;
  Background background;

  double pdf(double x) const {
    double s = 0;
    for (const auto& o : option.outcomes())
      s += to_double(o.prob) * background.pdf(x - o.payoff);
    return s;
  }
  double ccdf(double x) const {
    double s = 0;
    for (const auto& o : option.outcomes())
      s += to_double(o.prob) * background.ccdf(x - o.payoff);
    return s;
  }
  double cdf(double x) const {
    double s = 0;
    for (const auto& o : option.outcomes())
      s += to_double(o.prob) * background.cdf(x - o.payoff);
    return s;
  }
};

inline double overall_ccdf(const SimpleProspect& o, const Background& b,
                           double x) {
  return OverallProspect{o, b}.ccdf(x);
}

namespace detail {

// The CCDF gap between two overall prospects sharing a background equals the
// convolution of beta with Delta, which collapses to an exact finite sum of
// CDF increments over the Delta intervals:
//   gap(x) = sum_k Delta_k * (F(x - b_k) - F(x - b_{k+1}))
// Evaluated through the stable increment kernel, this keeps full relative
// precision arbitrarily deep in the tails, which the raw CCDF difference
// does not.
struct GapEvaluator {
  std::vector<double> lo_off, hi_off;  // b_k, b_{k+1} per nonzero interval
  std::vector<double> weight;          // Delta_k as double
  const Background* bg;

  GapEvaluator(const DeltaFunction& d, const Background& b) : bg(&b) {
    const auto& bp = d.breakpoints();
    const auto& vals = d.values();
    for (size_t k = 0; k < vals.size(); ++k) {
      if (vals[k] == 0) continue;
      lo_off.push_back(bp[k]);
      hi_off.push_back(bp[k + 1]);
      weight.push_back(to_double(vals[k]));
    }
  }

  double gap(double x) const {
    double s = 0;
    for (size_t k = 0; k < weight.size(); ++k)
      s += weight[k] * bg->cdf_increment(x - hi_off[k], x - lo_off[k]);
    return s;
  }

  // Sum of absolute contributions; the natural local scale of the gap.
  double envelope(double x) const {
    double s = 0;
    for (size_t k = 0; k < weight.size(); ++k)
      s += std::abs(weight[k]) *
           bg->cdf_increment(x - hi_off[k], x - lo_off[k]);
    return s;
  }

  // gap / envelope in [-1, 1]; scale-free even where the raw gap underflows.
  double normalized(double x) const {
    double e = envelope(x);
    if (e <= 0) return 0.0;
    return gap(x) / e;
  }
};

// Scan grid for the dominance search. Gap features concentrate where
// x - offset is near the background mode, so we lay dense windows around
// mode + offset for every Delta breakpoint (merged when overlapping), bridge
// the gaps geometrically, and push geometric tail probes far out on both
// sides. Handles payoff spans from units up to 1e52 without grid blowup.
inline std::vector<double> dominance_grid(const DeltaFunction& d,
                                          const Background& b,
                                          size_t base_points = 4096) {
  double sf = b.scale_factor();
  double m = b.mode();
  const auto& bp = d.breakpoints();

  struct Window {
    double lo, hi;
  };
  std::vector<Window> windows;
  for (double u : bp) windows.push_back({m + u - 25 * sf, m + u + 25 * sf});
  std::sort(windows.begin(), windows.end(),
            [](const Window& a, const Window& b2) { return a.lo < b2.lo; });
  std::vector<Window> merged;
  for (const auto& w : windows) {
    if (!merged.empty() && w.lo <= merged.back().hi)
      merged.back().hi = std::max(merged.back().hi, w.hi);
    else
      merged.push_back(w);
  }

  std::vector<double> grid;
  for (const auto& w : merged) {
    double len = w.hi - w.lo;
    auto n = static_cast<size_t>(
        std::min(8.0, std::max(1.0, len / (50 * sf))) * base_points);
    auto pts = num::linspace(w.lo, w.hi, n);
    grid.insert(grid.end(), pts.begin(), pts.end());
    // x8 densification inside the payoff-offset core of the window
    double core_lo = std::max(w.lo, m + bp.front() - 3 * sf);
    double core_hi = std::min(w.hi, m + bp.back() + 3 * sf);
    if (core_hi > core_lo && core_hi - core_lo < 20 * sf) {
      auto dense = num::linspace(core_lo, core_hi, base_points);
      grid.insert(grid.end(), dense.begin(), dense.end());
    }
  }
  // geometric bridges between consecutive windows
  for (size_t i = 0; i + 1 < merged.size(); ++i) {
    double a = merged[i].hi, c = merged[i + 1].lo;
    double span = c - a;
    for (int k = 1; k <= 64; ++k) {
      double t = span * std::pow(0.5, k);
      if (t < sf * 1e-3) break;
      grid.push_back(a + t);
      grid.push_back(c - t);
    }
    grid.push_back(a + span / 2);
  }
  // geometric tail probes
  for (int k = 0; k <= 40; ++k) {
    double t = sf * std::pow(2.0, k);
    if (t > 1e6 * sf) break;
    grid.push_back(merged.front().lo - t);
    grid.push_back(merged.back().hi + t);
  }
  num::sort_unique(grid);
  return grid;
}

}  // namespace detail

// CCDF gap between the overall prospects of oi and oj, cross-checked: the
// exact increment sum against adaptive quadrature of the convolution
// integral. Disagreement beyond 1e-6 signals a kernel bug.
inline double ccdf_gap(const SimpleProspect& oi, const SimpleProspect& oj,
                       const Background& b, double x) {
  DeltaFunction d(oi, oj);
  detail::GapEvaluator ev(d, b);
  double exact = ev.gap(x);
  double quad = 0;
  for (size_t k = 0; k < ev.weight.size(); ++k) {
    quad += ev.weight[k] *
            num::adaptive_simpson(
                [&](double y) { return b.pdf(y); }, x - ev.hi_off[k],
                x - ev.lo_off[k], 1e-12);
  }
  if (std::abs(exact - quad) > 1e-6)
    throw QuadratureFailure("ccdf_gap: closed form and quadrature disagree at x=" +
                            std::to_string(x));
  return exact;
}

enum class Verdict { Dominates, DominatedBy, Neither, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Dominates: return "Dominates";
    case Verdict::DominatedBy: return "DominatedBy";
    case Verdict::Neither: return "Neither";
    default: return "Inconclusive";
  }
}

struct DominanceCertificate {
  Verdict verdict = Verdict::Inconclusive;
  // raw gap extrema over the refined scan
  double min_gap_x = 0, min_gap = 0;
  double max_gap_x = 0, max_gap = 0;
  // envelope-normalized extrema (tangency detection is done on these)
  double min_norm = 0, max_norm = 0;
  double scan_lo = 0, scan_hi = 0;
  bool decided_in_vacuum = false;
  bool wide_grid_fallback = false;  // background had no finite decay bound
};

struct DominanceOptions {
  size_t grid_points = 4096;
  double tangency_tol = 1e-12;  // on the normalized gap
};

// Decides first-order stochastic dominance between the overall prospects of
// oi and oj under background b. Grid scan + golden-section refinement on the
// normalized gap; geometric tail probes extend the scan far beyond the
// payoff span, where the gap sign is asymptotically constant.
inline DominanceCertificate dominates(const SimpleProspect& oi,
                                      const SimpleProspect& oj,
                                      const Background& b,
                                      const DominanceOptions& opts = {}) {
  DominanceCertificate cert;
  DeltaFunction d(oi, oj);
  if (d.is_zero()) {
    cert.verdict = Verdict::Neither;
    cert.decided_in_vacuum = true;
    return cert;
  }
  // Vacuum dominance transfers to every background.
  if (d.nonnegative()) {
    cert.verdict = Verdict::Dominates;
    cert.decided_in_vacuum = true;
    return cert;
  }
  if (d.nonpositive()) {
    cert.verdict = Verdict::DominatedBy;
    cert.decided_in_vacuum = true;
    return cert;
  }

  cert.wide_grid_fallback = !b.has_large_tails();

  detail::GapEvaluator ev(d, b);
  auto grid = detail::dominance_grid(d, b, opts.grid_points);
  // Drop probes so deep in the tails that the increment kernel underflows;
  // the gap sign out there matches the last representable probe.
  std::erase_if(grid, [&](double x) { return ev.envelope(x) <= 0.0; });
  cert.scan_lo = grid.front();
  cert.scan_hi = grid.back();

  double bracket_tol = 1e-9 * b.scale_factor();
  auto norm = [&](double x) { return ev.normalized(x); };
  auto nmin = num::refine_min(norm, grid, bracket_tol);
  auto nmax = num::refine_max(norm, grid, bracket_tol);
  cert.min_norm = nmin.value;
  cert.max_norm = nmax.value;
  cert.min_gap_x = nmin.x;
  cert.min_gap = ev.gap(nmin.x);
  cert.max_gap_x = nmax.x;
  cert.max_gap = ev.gap(nmax.x);

  const double tol = opts.tangency_tol;
  if (cert.min_norm > tol)
    cert.verdict = Verdict::Dominates;
  else if (cert.max_norm < -tol)
    cert.verdict = Verdict::DominatedBy;
  else if (cert.min_norm < -tol && cert.max_norm > tol)
    cert.verdict = Verdict::Neither;
  else
    cert.verdict = Verdict::Inconclusive;
  return cert;
}

}  // namespace domlab
