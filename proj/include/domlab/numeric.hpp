#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

// Scalar search / integration helpers shared by the dominance machinery.
// Everything here is deterministic and allocation-light.

namespace domlab::num {

inline constexpr double kGolden = 0.6180339887498949;

// Minimizes f on [a, b] by golden-section search down to bracket width `tol`.
// f need not be smooth; unimodality on the bracket is assumed.
template <class F>
double golden_min(F&& f, double a, double b, double tol) {
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  return golden_min([&](double x) { return -f(x); }, a, b, tol);
}

// Sign-change bisection. Requires f(lo) and f(hi) to have opposite signs.
template <class F>
double bisect_root(F&& f, double lo, double hi, double xtol,
                   int max_iter = 200) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect_root: endpoints do not bracket a root");
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Predicate bisection: pred must be monotone (false ... false true ... true).
// Returns the approximate switch point. Requires pred(hi) == true.
template <class P>
double bisect_predicate(P&& pred, double lo, double hi, double xtol_abs,
                        double xtol_rel = 0.0) {
  while (hi - lo > xtol_abs &&
         (xtol_rel <= 0.0 || hi - lo > xtol_rel * std::abs(hi))) {
    double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Adaptive Simpson quadrature with absolute tolerance.
namespace detail {
template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        int max_depth = 48) {
  if (a == b) return 0.0;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

struct GridExtremum {
  double x = 0.0;
  double value = 0.0;
};

// Scans f over the given sorted grid, then golden-refines every interior
// local minimum bracket. Returns the global minimum found.
template <class F>
GridExtremum refine_min(F&& f, const std::vector<double>& grid,
                        double bracket_tol) {
  if (grid.size() < 2) throw std::invalid_argument("refine_min: grid too small");
  std::vector<double> v(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  GridExtremum best{grid[0], v[0]};
  for (size_t i = 0; i < grid.size(); ++i)
    if (v[i] < best.value) best = {grid[i], v[i]};
  for (size_t i = 1; i + 1 < grid.size(); ++i) {
    if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) {
      double x = golden_min(f, grid[i - 1], grid[i + 1], bracket_tol);
      double fx = f(x);
      if (fx < best.value) best = {x, fx};
    }
  }
  return best;
}

template <class F>
GridExtremum refine_max(F&& f, const std::vector<double>& grid,
                        double bracket_tol) {
  auto neg = refine_min([&](double x) { return -f(x); }, grid, bracket_tol);
  return {neg.x, -neg.value};
}

// Uniform grid of n points over [lo, hi], inclusive.
inline std::vector<double> linspace(double lo, double hi, size_t n) {
  std::vector<double> g(n);
  for (size_t i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

inline void sort_unique(std::vector<double>& g) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
}

}  // namespace domlab::num
