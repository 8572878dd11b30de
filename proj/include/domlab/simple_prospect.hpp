#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "domlab/errors.hpp"
#include "domlab/rational.hpp"

namespace domlab {

struct Outcome {
  double payoff = 0.0;
  Rational prob;
};

// A finite simple prospect: (payoff, probability) pairs with exact rational
// probabilities summing to 1. Outcomes are sorted by payoff and deduplicated
// on construction (probabilities merge); zero-probability outcomes are
// dropped.
class SimpleProspect {
 public:
  explicit SimpleProspect(std::vector<Outcome> outcomes) {
    std::map<double, Rational> merged;
    for (auto& o : outcomes) {
      if (o.prob < 0)
        throw std::invalid_argument("negative outcome probability");
      if (o.prob == 0) continue;
      if (!std::isfinite(o.payoff))
        throw std::invalid_argument("non-finite payoff");
      merged[o.payoff] += o.prob;
    }
    if (merged.empty()) throw std::invalid_argument("empty prospect");
    Rational total = 0;
    for (auto& [v, p] : merged) {
      outcomes_.push_back({v, p});
      total += p;
    }
    if (total != 1)
      throw ProbabilitySum("outcome probabilities must sum to 1 exactly");
  }

  // sorted ascending by payoff
  const std::vector<Outcome>& outcomes() const { return outcomes_; }

  double min_payoff() const { return outcomes_.front().payoff; }
  double max_payoff() const { return outcomes_.back().payoff; }

  // Pr(payoff >= x), exact.
  Rational ccdf(double x) const {
    Rational s = 0;
    for (const auto& o : outcomes_)
      if (o.payoff >= x) s += o.prob;
    return s;
  }

  // Expected payoff, accumulated in exact rational arithmetic over the
  // (dyadic-rational) payoff doubles.
  Rational expectation_exact() const {
    Rational e = 0;
    for (const auto& o : outcomes_)
      e += o.prob * rational_from_double(o.payoff);
    return e;
  }
  double expectation() const { return to_double(expectation_exact()); }

  bool operator==(const SimpleProspect& other) const {
    return outcomes_.size() == other.outcomes_.size() &&
           std::equal(outcomes_.begin(), outcomes_.end(),
                      other.outcomes_.begin(), [](const auto& a, const auto& b) {
                        return a.payoff == b.payoff && a.prob == b.prob;
                      });
  }

 private:
  std::vector<Outcome> outcomes_;
};

// Delta_{i,j}: the difference of the two simple prospects' CCDFs. Piecewise
// constant on the merged payoff breakpoints: value_[k] holds Delta on the
// half-open interval (breakpoints_[k], breakpoints_[k+1]]; Delta is zero
// below the first breakpoint and above the last.
class DeltaFunction {
 public:
  DeltaFunction(const SimpleProspect& oi, const SimpleProspect& oj) {
    for (const auto& o : oi.outcomes()) breakpoints_.push_back(o.payoff);
    for (const auto& o : oj.outcomes()) breakpoints_.push_back(o.payoff);
    std::sort(breakpoints_.begin(), breakpoints_.end());
    breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()),
                       breakpoints_.end());
    values_.reserve(breakpoints_.size() - 1);
    for (size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
      // On (b_k, b_{k+1}], Pr(O >= x) counts payoffs >= b_{k+1}.
      values_.push_back(oi.ccdf(breakpoints_[k + 1]) -
                        oj.ccdf(breakpoints_[k + 1]));
    }
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Rational>& values() const { return values_; }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Rational& v) { return v == 0; });
  }

  Rational value_at(double x) const {
    if (x <= breakpoints_.front() || x > breakpoints_.back()) return 0;
    // x in (b_k, b_{k+1}]  <=>  lower_bound returns b_{k+1}
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    size_t idx = static_cast<size_t>(it - breakpoints_.begin());
    return values_[idx - 1];
  }

  // |supp(Delta)| = max(supp) - min(supp); 0 for identically zero Delta.
  double support_range() const {
    double lo = 0, hi = 0;
    bool seen = false;
    for (size_t k = 0; k < values_.size(); ++k) {
      if (values_[k] != 0) {
        if (!seen) lo = breakpoints_[k];
        hi = breakpoints_[k + 1];
        seen = true;
      }
    }
    return seen ? hi - lo : 0.0;
  }

  double integral() const {
    double s = 0;
    for (size_t k = 0; k < values_.size(); ++k)
      s += to_double(values_[k]) * (breakpoints_[k + 1] - breakpoints_[k]);
    return s;
  }
  double integral_positive_part() const {
    double s = 0;
    for (size_t k = 0; k < values_.size(); ++k)
      if (values_[k] > 0)
        s += to_double(values_[k]) * (breakpoints_[k + 1] - breakpoints_[k]);
    return s;
  }
  double integral_negative_part() const {
    double s = 0;
    for (size_t k = 0; k < values_.size(); ++k)
      if (values_[k] < 0)
        s -= to_double(values_[k]) * (breakpoints_[k + 1] - breakpoints_[k]);
    return s;
  }

  Rational max_value() const {
    Rational m = 0;
    for (const auto& v : values_) m = std::max(m, v);
    return m;
  }

  bool nonnegative() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Rational& v) { return v >= 0; });
  }
  bool nonpositive() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const Rational& v) { return v <= 0; });
  }

 private:
  std::vector<double> breakpoints_;
  std::vector<Rational> values_;
};

inline DeltaFunction delta(const SimpleProspect& oi, const SimpleProspect& oj) {
  return DeltaFunction(oi, oj);
}

// In-vacuum first-order stochastic dominance: Delta >= 0 everywhere and > 0
// somewhere.
inline bool dominates_in_vacuum(const SimpleProspect& oi,
                                const SimpleProspect& oj) {
  DeltaFunction d(oi, oj);
  return d.nonnegative() && !d.is_zero();
}

enum class PascalSide { Positive, Negative };

// Replaces every selected-sign outcome (v, p) with (c*v, p/c) and returns the
// freed probability mass p - p/c to payoff 0. Expectation-preserving.
inline SimpleProspect pascalian_transform(const SimpleProspect& o,
                                          const Rational& c, PascalSide side) {
  if (c <= 1) throw InvalidFactor("pascalian factor must exceed 1");
  double cd = to_double(c);
  std::vector<Outcome> out;
  Rational slack = 0;
  for (const auto& ou : o.outcomes()) {
    bool selected = side == PascalSide::Positive ? ou.payoff > 0
                                                 : ou.payoff < 0;
    if (selected) {
      Rational moved = ou.prob / c;
      out.push_back({ou.payoff * cd, moved});
      slack += ou.prob - moved;
    } else {
      out.push_back(ou);
    }
  }
  if (slack > 0) out.push_back({0.0, slack});
  return SimpleProspect(std::move(out));
}

}  // namespace domlab
