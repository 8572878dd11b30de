#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "domlab/overall.hpp"

namespace domlab {

// One report covering both bound theorems for a pair of options under a
// background: the expectational ratio and rate (sufficient side), and the
// max-Delta vs convolution-supremum comparison (necessary side).
struct BoundReport {
  double ratio = 0;                 // integral(Delta+) / integral(Delta-); +inf when Delta- = 0
  std::optional<double> rate;       // nullopt = unbounded
  bool ubt_satisfied = false;       // ratio > rate  =>  dominance
  double lbt_lhs = 0;               // max_x Delta(x)
  double lbt_rhs = 0;               // max_x integral Delta-(x-y) beta(y) dy
  bool lbt_satisfied = false;       // dominance  =>  lbt_lhs > lbt_rhs
};

// r(O_i, O_j, beta): the maximum ratio between values of beta at arguments
// separated by less than |supp(Delta)|. Closed form for Laplace and
// power-law tails; numeric 1-D maximization otherwise. Unbounded for
// Gaussian backgrounds.
inline std::optional<double> rate(const SimpleProspect& oi,
                                  const SimpleProspect& oj,
                                  const Background& b) {
  DeltaFunction d(oi, oj);
  if (d.is_zero()) throw DegenerateDelta("rate: identical prospects");
  double span = d.support_range();
  // The strict |y| < span supremum; numerically immaterial offset.
  double sep = span * (1.0 - 1e-12);
  if (const auto* lap = std::get_if<Laplace>(&b.family()))
    return std::exp(sep / lap->scale);
  if (const auto* pl = std::get_if<PowerLawTail>(&b.family()))
    return std::pow(1.0 + sep / pl->cutoff, pl->exponent);
  if (!b.has_large_tails()) return std::nullopt;
  // Unimodal pdf: the ratio at separation |y| <= sep is maximized at
  // |y| = sep, so maximize pdf(x)/pdf(x + sep) over x.
  double sf = b.scale_factor(), m = b.mode();
  auto lr = [&](double x) {
    return std::log(b.pdf(x)) - std::log(b.pdf(x + sep));
  };
  auto grid = num::linspace(m - 40 * sf - sep, m + 40 * sf, 8192);
  auto best = num::refine_max(lr, grid, 1e-10 * sf);
  return std::exp(best.value);
}

// Upper Bound Theorem check: expectational ratio strictly above the rate is
// sufficient for dominance.
inline BoundReport upper_bound_check(const SimpleProspect& oi,
                                     const SimpleProspect& oj,
                                     const Background& b) {
  DeltaFunction d(oi, oj);
  if (d.is_zero()) throw DegenerateDelta("upper_bound_check: identical prospects");
  BoundReport r;
  double neg = d.integral_negative_part();
  double pos = d.integral_positive_part();
  r.ratio = neg == 0 ? std::numeric_limits<double>::infinity() : pos / neg;
  r.rate = rate(oi, oj, b);
  r.ubt_satisfied = r.rate.has_value() && r.ratio > *r.rate;
  return r;
}

// Supremum over x of the convolution of Delta- with beta. Delta- is
// piecewise constant with compact support, so the convolution is an exact
// finite sum of CDF increments; the sup is found by grid + refinement.
inline double lbt_convolution_sup(const DeltaFunction& d, const Background& b) {
  const auto& bp = d.breakpoints();
  const auto& vals = d.values();
  std::vector<double> lo_off, hi_off, w;
  for (size_t k = 0; k < vals.size(); ++k) {
    if (vals[k] < 0) {
      lo_off.push_back(bp[k]);
      hi_off.push_back(bp[k + 1]);
      w.push_back(-to_double(vals[k]));
    }
  }
  if (w.empty()) return 0.0;
  auto conv = [&](double x) {
    double s = 0;
    for (size_t k = 0; k < w.size(); ++k)
      s += w[k] * b.cdf_increment(x - hi_off[k], x - lo_off[k]);
    return s;
  };
  double sf = b.scale_factor(), m = b.mode();
  std::vector<double> grid;
  for (size_t k = 0; k < w.size(); ++k) {
    auto pts = num::linspace(m + lo_off[k] - 40 * sf, m + hi_off[k] + 40 * sf,
                             8192);
    grid.insert(grid.end(), pts.begin(), pts.end());
  }
  num::sort_unique(grid);
  return num::refine_max(conv, grid, 1e-10 * sf).value;
}

// Lower Bound Theorem check: dominance requires max Delta to strictly exceed
// the convolution supremum. Necessary only.
inline BoundReport lower_bound_check(const SimpleProspect& oi,
                                     const SimpleProspect& oj,
                                     const Background& b) {
  BoundReport r;
  DeltaFunction d(oi, oj);
  r.lbt_lhs = to_double(d.max_value());
  r.lbt_rhs = lbt_convolution_sup(d, b);
  r.lbt_satisfied = r.lbt_lhs > r.lbt_rhs;
  return r;
}

inline BoundReport bound_report(const SimpleProspect& oi,
                                const SimpleProspect& oj,
                                const Background& b) {
  BoundReport r = upper_bound_check(oi, oj, b);
  BoundReport l = lower_bound_check(oi, oj, b);
  r.lbt_lhs = l.lbt_lhs;
  r.lbt_rhs = l.lbt_rhs;
  r.lbt_satisfied = l.lbt_satisfied;
  return r;
}

struct PascalianScanRow {
  double c = 1;
  double lbt_lhs = 0;
  double lbt_rhs = 0;
  Verdict verdict = Verdict::Inconclusive;
};

struct PascalianScan {
  std::vector<PascalianScanRow> rows;
  // index of the first Neither verdict, or -1 if dominance never breaks
  int flip_index = -1;
  // true when the verdict flips to Neither exactly once and stays there
  bool flip_monotone = true;
};

// Applies the Pascalian transformation at each ladder factor and records how
// the Lower Bound Theorem margin erodes until dominance breaks.
inline PascalianScan pascalian_limit_scan(const SimpleProspect& oi,
                                          const SimpleProspect& oj,
                                          const Background& b,
                                          const std::vector<double>& c_ladder) {
  PascalianScan scan;
  for (double c : c_ladder) {
    SimpleProspect ti = c == 1.0
                            ? oi
                            : pascalian_transform(oi, rational_from_double(c),
                                                  PascalSide::Positive);
    PascalianScanRow row;
    row.c = c;
    BoundReport br = lower_bound_check(ti, oj, b);
    row.lbt_lhs = br.lbt_lhs;
    row.lbt_rhs = br.lbt_rhs;
    row.verdict = dominates(ti, oj, b).verdict;
    if (row.verdict != Verdict::Dominates && scan.flip_index < 0)
      scan.flip_index = static_cast<int>(scan.rows.size());
    if (scan.flip_index >= 0 && row.verdict == Verdict::Dominates)
      scan.flip_monotone = false;
    scan.rows.push_back(row);
  }
  return scan;
}

}  // namespace domlab
