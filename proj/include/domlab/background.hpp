#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "domlab/errors.hpp"
#include "domlab/numeric.hpp"

namespace domlab {

class Background;

// Parametric families. All parameters are in choiceworthiness units.
struct Laplace {
  double location = 0.0;
  double scale = 1.0;  // rho; decay rate is 1/rho
};

struct Cauchy {
  double location = 0.0;
  double scale = 1.0;  // gamma
};

struct Gaussian {
  double mean = 0.0;
  double sd = 1.0;
};

// Symmetric density with polynomial tails:
//   pdf(x) = (alpha-1)/(2*cutoff) * (1 + |x - center|/cutoff)^-alpha
struct PowerLawTail {
  double exponent = 3.0;  // alpha > 1
  double cutoff = 1.0;
  double center = 0.0;
};

struct FiniteMixture {
  std::vector<double> weights;  // positive, sum to 1
  std::vector<Background> components;
};

namespace detail {

// Inverse of the standard normal CDF (Acklam's rational approximation,
// refined with one Halley step against erfc).
inline double norm_quantile(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // One Halley refinement.
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

// atan(b) - atan(a), stable when a and b share a sign and are large.
inline double atan_diff(double b, double a) {
  if (a * b > 0) return std::atan((b - a) / (1 + a * b));
  return std::atan(b) - std::atan(a);
}

}  // namespace detail

// A background prospect: a continuous PDF over background payoffs, with
// closed-form CDF/CCDF/quantile services and tail-decay diagnostics.
// Immutable; all evaluation is pure and thread-safe.
class Background {
 public:
  using Family =
      std::variant<Laplace, Cauchy, Gaussian, PowerLawTail, FiniteMixture>;

  explicit Background(Family f) : family_(std::move(f)) { validate(); }

  const Family& family() const { return family_; }

  double pdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return pdf_impl(f, x); }, family_);
  }

  // d/dx pdf(x); used by the decay-rate diagnostics.
  double pdf_derivative(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return dpdf_impl(f, x); }, family_);
  }

  double cdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return cdf_impl(f, x); }, family_);
  }

  double ccdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return ccdf_impl(f, x); }, family_);
  }

  // F(b) - F(a) for a <= b, evaluated in factored closed forms so that deep
  // tail increments keep full relative precision. The dominance checker and
  // the threshold solvers live on this.
  double cdf_increment(double a, double b) const {
    if (a > b) return -cdf_increment(b, a);
    return std::visit(
        [&](const auto& f) -> double { return inc_impl(f, a, b); }, family_);
  }

  // log CDF / log CCDF; finite far beyond the point where cdf() underflows.
  double log_cdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return logcdf_impl(f, x); }, family_);
  }
  double log_ccdf(double x) const {
    return std::visit(
        [&](const auto& f) -> double { return logccdf_impl(f, x); }, family_);
  }

  double quantile(double q) const {
    if (!(q > 0.0 && q < 1.0))
      throw std::invalid_argument("quantile: q must be in (0,1)");
    return std::visit(
        [&](const auto& f) -> double { return quantile_impl(f, q); }, family_);
  }

  double mode() const {
    return std::visit([&](const auto& f) -> double { return mode_impl(f); },
                      family_);
  }

  // Length of the shortest interval carrying probability 0.5.
  double scale_factor() const {
    return std::visit([&](const auto& f) -> double { return sf_impl(f); },
                      family_);
  }

  // Distribution with pdf (1/s) * pdf((x - a)/s). Families are closed under
  // this transformation; mixtures rescale componentwise.
  Background rescaled(double s, double a = 0.0) const {
    if (!(s > 0.0)) throw InvalidScale("rescale: scale must be positive");
    return Background(std::visit(
        [&](const auto& f) -> Family { return rescale_impl(f, s, a); },
        family_));
  }

  Background translated(double a) const { return rescaled(1.0, a); }

  // sup_x |pdf'(x)| / pdf(x); nullopt means unbounded (thinner than
  // exponential tails). For mixtures the sup is taken over the truncated
  // domain mode +/- 40 scale factors; it is finite whenever any component
  // has a finite rate, since the heaviest tail dominates.
  std::optional<double> decay_rate_sup() const {
    return std::visit(
        [&](const auto& f) -> std::optional<double> { return rate_impl(f); },
        family_);
  }

  struct DecayBound {
    double rate;         // sup |pdf'|/pdf
    double ratio_bound;  // exp(rate * window); Gronwall ratio bound
  };

  // Certifies the large-tails property over a window: a finite rate bounds
  // the ratio of pdf values at points separated by < window by e^{rate*w}.
  std::optional<DecayBound> decay_rate_bound(double window) const {
    if (!(window > 0.0))
      throw std::invalid_argument("decay_rate_bound: window must be positive");
    auto r = decay_rate_sup();
    if (!r) return std::nullopt;
    return DecayBound{*r, std::exp(*r * window)};
  }

  bool has_large_tails() const { return decay_rate_sup().has_value(); }

 private:
  Family family_;

  void validate() const {
    std::visit([&](const auto& f) { validate_impl(f); }, family_);
  }

  static void validate_impl(const Laplace& f) {
    if (!(f.scale > 0)) throw InvalidScale("Laplace scale must be positive");
  }
  static void validate_impl(const Cauchy& f) {
    if (!(f.scale > 0)) throw InvalidScale("Cauchy scale must be positive");
  }
  static void validate_impl(const Gaussian& f) {
    if (!(f.sd > 0)) throw InvalidScale("Gaussian sd must be positive");
  }
  static void validate_impl(const PowerLawTail& f) {
    if (!(f.cutoff > 0))
      throw InvalidScale("PowerLawTail cutoff must be positive");
    if (!(f.exponent > 1))
      throw std::invalid_argument("PowerLawTail exponent must exceed 1");
  }
  static void validate_impl(const FiniteMixture& f) {
    if (f.weights.size() != f.components.size() || f.weights.empty())
      throw std::invalid_argument("mixture weights/components mismatch");
    double sum = 0;
    for (double w : f.weights) {
      if (!(w > 0))
        throw std::invalid_argument("mixture weights must be positive");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("mixture weights must sum to 1");
  }

  // ---- pdf ----
  static double pdf_impl(const Laplace& f, double x) {
    return std::exp(-std::abs(x - f.location) / f.scale) / (2 * f.scale);
  }
  static double pdf_impl(const Cauchy& f, double x) {
    double u = (x - f.location) / f.scale;
    return 1.0 / (M_PI * f.scale * (1 + u * u));
  }
  static double pdf_impl(const Gaussian& f, double x) {
    double z = (x - f.mean) / f.sd;
    return std::exp(-0.5 * z * z) / (f.sd * std::sqrt(2 * M_PI));
  }
  static double pdf_impl(const PowerLawTail& f, double x) {
    double u = std::abs(x - f.center) / f.cutoff;
    return (f.exponent - 1) / (2 * f.cutoff) *
           std::pow(1 + u, -f.exponent);
  }
  static double pdf_impl(const FiniteMixture& f, double x) {
    double s = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
      s += f.weights[i] * f.components[i].pdf(x);
    return s;
  }

  // ---- pdf derivative ----
  static double dpdf_impl(const Laplace& f, double x) {
    double sgn = x >= f.location ? -1.0 : 1.0;
    return sgn * pdf_impl(f, x) / f.scale;
  }
  static double dpdf_impl(const Cauchy& f, double x) {
    double u = (x - f.location) / f.scale;
    return -2 * u / (f.scale * (1 + u * u)) * pdf_impl(f, x);
  }
  static double dpdf_impl(const Gaussian& f, double x) {
    return -(x - f.mean) / (f.sd * f.sd) * pdf_impl(f, x);
  }
  static double dpdf_impl(const PowerLawTail& f, double x) {
    double sgn = x >= f.center ? -1.0 : 1.0;
    double u = std::abs(x - f.center) / f.cutoff;
    return sgn * pdf_impl(f, x) * f.exponent / (f.cutoff * (1 + u));
  }
  static double dpdf_impl(const FiniteMixture& f, double x) {
    double s = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
      s += f.weights[i] * f.components[i].pdf_derivative(x);
    return s;
  }

  // ---- cdf / ccdf ----
  static double cdf_impl(const Laplace& f, double x) {
    double u = (x - f.location) / f.scale;
    return u <= 0 ? 0.5 * std::exp(u) : 1 - 0.5 * std::exp(-u);
  }
  static double cdf_impl(const Cauchy& f, double x) {
    double u = (x - f.location) / f.scale;
    // atan2-style branch keeps precision in the left tail.
    if (u < -1) return std::atan(-1 / u) / M_PI;
    return 0.5 + std::atan(u) / M_PI;
  }
  static double cdf_impl(const Gaussian& f, double x) {
    return 0.5 * std::erfc(-(x - f.mean) / (f.sd * std::sqrt(2.0)));
  }
  static double cdf_impl(const PowerLawTail& f, double x) {
    double u = (x - f.center) / f.cutoff;
    return u <= 0 ? 0.5 * std::pow(1 - u, 1 - f.exponent)
                  : 1 - 0.5 * std::pow(1 + u, 1 - f.exponent);
  }
  static double cdf_impl(const FiniteMixture& f, double x) {
    double s = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
      s += f.weights[i] * f.components[i].cdf(x);
    return s;
  }

  static double ccdf_impl(const Laplace& f, double x) {
    double u = (x - f.location) / f.scale;
    return u >= 0 ? 0.5 * std::exp(-u) : 1 - 0.5 * std::exp(u);
  }
  static double ccdf_impl(const Cauchy& f, double x) {
    Cauchy g{-f.location, f.scale};
    return cdf_impl(g, -x);
  }
  static double ccdf_impl(const Gaussian& f, double x) {
    return 0.5 * std::erfc((x - f.mean) / (f.sd * std::sqrt(2.0)));
  }
  static double ccdf_impl(const PowerLawTail& f, double x) {
    PowerLawTail g{f.exponent, f.cutoff, -f.center};
    return cdf_impl(g, -x);
  }
  static double ccdf_impl(const FiniteMixture& f, double x) {
    double s = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
      s += f.weights[i] * f.components[i].ccdf(x);
    return s;
  }

  // ---- stable cdf increments ----
  static double inc_impl(const Laplace& f, double a, double b) {
    double ua = (a - f.location) / f.scale;
    double ub = (b - f.location) / f.scale;
    if (ub <= 0) return -0.5 * std::exp(ub) * std::expm1(ua - ub);
    if (ua >= 0) return -0.5 * std::exp(-ua) * std::expm1(ua - ub);
    return -0.5 * std::expm1(ua) - 0.5 * std::expm1(-ub);
  }
  static double inc_impl(const Cauchy& f, double a, double b) {
    double ua = (a - f.location) / f.scale;
    double ub = (b - f.location) / f.scale;
    return detail::atan_diff(ub, ua) / M_PI;
  }
  static double inc_impl(const Gaussian& f, double a, double b) {
    double za = (a - f.mean) / (f.sd * std::sqrt(2.0));
    double zb = (b - f.mean) / (f.sd * std::sqrt(2.0));
    if (za >= 0) return 0.5 * (std::erfc(za) - std::erfc(zb));
    if (zb <= 0) return 0.5 * (std::erfc(-zb) - std::erfc(-za));
    return 0.5 * (std::erf(zb) - std::erf(za));
  }
  static double inc_impl(const PowerLawTail& f, double a, double b) {
    double ua = (a - f.center) / f.cutoff;
    double ub = (b - f.center) / f.cutoff;
    double k = 1 - f.exponent;  // negative
    if (ub <= 0) {
      // 0.5[(1-ub)^k - (1-ua)^k], both in the left tail.
      double base = std::pow(1 - ub, k);
      return -0.5 * base * std::expm1(k * (std::log1p(-ua) - std::log1p(-ub)));
    }
    if (ua >= 0) {
      double base = std::pow(1 + ua, k);
      return -0.5 * base * std::expm1(k * (std::log1p(ub) - std::log1p(ua)));
    }
    return -0.5 * std::expm1(k * std::log1p(-ua)) -
           0.5 * std::expm1(k * std::log1p(ub));
  }
  static double inc_impl(const FiniteMixture& f, double a, double b) {
    double s = 0;
    for (size_t i = 0; i < f.weights.size(); ++i)
      s += f.weights[i] * f.components[i].cdf_increment(a, b);
    return s;
  }

  // ---- log cdf / log ccdf ----
  static double logcdf_impl(const Laplace& f, double x) {
    double u = (x - f.location) / f.scale;
    return u <= 0 ? std::log(0.5) + u : std::log1p(-0.5 * std::exp(-u));
  }
  static double logcdf_impl(const Cauchy& f, double x) {
    return std::log(cdf_impl(f, x));  // left tail ~ gamma/(pi|x|), no underflow
  }
  static double logcdf_impl(const Gaussian& f, double x) {
    double z = (x - f.mean) / f.sd;
    if (z > -6) return std::log(cdf_impl(f, x));
    // asymptotic: log Phi(z) ~ -z^2/2 - log(-z * sqrt(2 pi)) - 1/z^2
    return -0.5 * z * z - std::log(-z * std::sqrt(2 * M_PI)) - 1.0 / (z * z);
  }
  static double logcdf_impl(const PowerLawTail& f, double x) {
    double u = (x - f.center) / f.cutoff;
    if (u <= 0) return std::log(0.5) + (1 - f.exponent) * std::log1p(-u);
    return std::log(cdf_impl(f, x));
  }
  static double logcdf_impl(const FiniteMixture& f, double x) {
    // log-sum-exp over components
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> terms(f.weights.size());
    for (size_t i = 0; i < f.weights.size(); ++i) {
      terms[i] = std::log(f.weights[i]) + f.components[i].log_cdf(x);
      m = std::max(m, terms[i]);
    }
    if (!std::isfinite(m)) return m;
    double s = 0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
  }

  template <class F>
  static double logccdf_impl(const F& f, double x) {
    F g = f;
    reflect(g);
    return logcdf_impl(g, -x);
  }
  static void reflect(Laplace& f) { f.location = -f.location; }
  static void reflect(Cauchy& f) { f.location = -f.location; }
  static void reflect(Gaussian& f) { f.mean = -f.mean; }
  static void reflect(PowerLawTail& f) { f.center = -f.center; }
  static void reflect(FiniteMixture& f) {
    for (auto& c : f.components) {
      auto fam = c.family();
      std::visit([](auto& g) { reflect_component(g); }, fam);
      c = Background(fam);
    }
  }
  template <class G>
  static void reflect_component(G& g) {
    reflect(g);
  }

  // ---- quantile ----
  static double quantile_impl(const Laplace& f, double q) {
    return q < 0.5 ? f.location + f.scale * std::log(2 * q)
                   : f.location - f.scale * std::log(2 * (1 - q));
  }
  static double quantile_impl(const Cauchy& f, double q) {
    return f.location + f.scale * std::tan(M_PI * (q - 0.5));
  }
  static double quantile_impl(const Gaussian& f, double q) {
    return f.mean + f.sd * detail::norm_quantile(q);
  }
  static double quantile_impl(const PowerLawTail& f, double q) {
    double k = 1.0 / (1 - f.exponent);
    if (q < 0.5) return f.center - f.cutoff * (std::pow(2 * q, k) - 1);
    return f.center + f.cutoff * (std::pow(2 * (1 - q), k) - 1);
  }
  static double quantile_impl(const FiniteMixture& f, double q) {
    // bracket by component quantiles, then bisect on the mixture cdf
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : f.components) {
      lo = std::min(lo, c.quantile(q));
      hi = std::max(hi, c.quantile(q));
    }
    if (lo == hi) return lo;
    FiniteMixture mix = f;
    return num::bisect_root(
        [&](double x) { return cdf_impl(mix, x) - q; }, lo, hi,
        1e-13 * std::max(1.0, std::abs(hi) + std::abs(lo)));
  }

  // ---- mode ----
  static double mode_impl(const Laplace& f) { return f.location; }
  static double mode_impl(const Cauchy& f) { return f.location; }
  static double mode_impl(const Gaussian& f) { return f.mean; }
  static double mode_impl(const PowerLawTail& f) { return f.center; }
  static double mode_impl(const FiniteMixture& f) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& c : f.components) {
      double m = c.mode(), s = c.scale_factor();
      lo = std::min(lo, m - 2 * s);
      hi = std::max(hi, m + 2 * s);
    }
    auto grid = num::linspace(lo, hi, 2048);
    auto best = num::refine_max(
        [&](double x) { return pdf_impl(f, x); }, grid, 1e-10 * (hi - lo));
    return best.x;
  }

  // ---- scale factor ----
  static double sf_impl(const Laplace& f) { return 2 * f.scale * std::log(2.0); }
  static double sf_impl(const Cauchy& f) { return 2 * f.scale; }
  static double sf_impl(const Gaussian& f) {
    return 2 * f.sd * detail::norm_quantile(0.75);
  }
  static double sf_impl(const PowerLawTail& f) {
    return 2 * f.cutoff * (std::pow(2.0, 1.0 / (f.exponent - 1)) - 1);
  }
  static double sf_impl(const FiniteMixture& f) {
    // Shortest 50% interval: minimize quantile(q + 1/2) - quantile(q).
    FiniteMixture mix = f;
    auto width = [&](double q) {
      return quantile_impl(mix, q + 0.5) - quantile_impl(mix, q);
    };
    double q = num::golden_min(width, 1e-9, 0.5 - 1e-9, 1e-10);
    return width(q);
  }

  // ---- rescale ----
  static Family rescale_impl(const Laplace& f, double s, double a) {
    return Laplace{a + s * f.location, s * f.scale};
  }
  static Family rescale_impl(const Cauchy& f, double s, double a) {
    return Cauchy{a + s * f.location, s * f.scale};
  }
  static Family rescale_impl(const Gaussian& f, double s, double a) {
    return Gaussian{a + s * f.mean, s * f.sd};
  }
  static Family rescale_impl(const PowerLawTail& f, double s, double a) {
    return PowerLawTail{f.exponent, s * f.cutoff, a + s * f.center};
  }
  static Family rescale_impl(const FiniteMixture& f, double s, double a) {
    FiniteMixture out;
    out.weights = f.weights;
    out.components.reserve(f.components.size());
    for (const auto& c : f.components)
      out.components.push_back(c.rescaled(s, a));
    return out;
  }

  // ---- decay rate ----
  static std::optional<double> rate_impl(const Laplace& f) {
    return 1.0 / f.scale;
  }
  static std::optional<double> rate_impl(const Cauchy& f) {
    // |pdf'/pdf| = 2|u| / (gamma (1 + u^2)), maximized at u = 1.
    return 1.0 / f.scale;
  }
  static std::optional<double> rate_impl(const Gaussian&) {
    return std::nullopt;  // |x|/sd^2 is unbounded
  }
  static std::optional<double> rate_impl(const PowerLawTail& f) {
    return f.exponent / f.cutoff;  // attained at the center
  }
  static std::optional<double> rate_impl(const FiniteMixture& f) {
    bool any_finite = false;
    for (const auto& c : f.components)
      if (c.decay_rate_sup()) any_finite = true;
    if (!any_finite) return std::nullopt;
    FiniteMixture mix = f;
    Background b{Family{mix}};
    double m = b.mode(), s = b.scale_factor();
    auto grid = num::linspace(m - 40 * s, m + 40 * s, 8192);
    auto best = num::refine_max(
        [&](double x) {
          return std::abs(b.pdf_derivative(x)) / b.pdf(x);
        },
        grid, 1e-9 * s);
    return best.value;
  }
};

inline Background make_laplace(double location, double scale) {
  return Background(Laplace{location, scale});
}
inline Background make_cauchy(double location, double scale) {
  return Background(Cauchy{location, scale});
}
inline Background make_gaussian(double mean, double sd) {
  return Background(Gaussian{mean, sd});
}

// Scale parameter for a Laplace with 95% central mass in [-h, +h].
inline double laplace_scale_from_ci95(double h) { return -h / std::log(0.05); }
// Same for a Cauchy: gamma = -h * cot(0.525 pi).
inline double cauchy_scale_from_ci95(double h) {
  return -h * (std::cos(0.525 * M_PI) / std::sin(0.525 * M_PI));
}

}  // namespace domlab
