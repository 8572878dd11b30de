#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "domlab/bounds.hpp"
#include "domlab/general_payoffs.hpp"
#include "domlab/mc_oracle.hpp"
#include "domlab/overall.hpp"
#include "domlab/thresholds.hpp"

namespace domlab {

struct ReproRow {
  int id = 0;
  std::string name;
  std::string detail;    // what was computed, with the headline numbers
  std::string expected;  // the pinned target and tolerance
  bool pass = false;
  double seconds = 0;
};

namespace repro {

inline Background laplace_500ci() {
  return make_laplace(0, laplace_scale_from_ci95(500));
}
inline Background cauchy_500ci() {
  return make_cauchy(0, cauchy_scale_from_ci95(500));
}
inline GambleFamily g_prime() {
  return GambleFamily({{-1.0, Rational(1, 2)}}, 2.0, 0.0);
}
inline GambleFamily g_double_prime() {
  return GambleFamily({{-1.0, Rational(1, 2)}}, 2000.0, 0.0);
}
inline SimpleProspect null_option() { return SimpleProspect({{0.0, 1}}); }
inline SimpleProspect basic_gamble() {
  return SimpleProspect({{-1.0, Rational(1, 2)}, {2.0, Rational(1, 2)}});
}

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

template <class F>
ReproRow timed(int id, std::string name, std::string expected, F&& body) {
  ReproRow row;
  row.id = id;
  row.name = std::move(name);
  row.expected = std::move(expected);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(row);
  } catch (const std::exception& e) {
    row.pass = false;
    row.detail = std::string("exception: ") + e.what();
  }
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return row;
}

}  // namespace repro

// 1. Two-sided gamble threshold, exponential-tail background, 500-unit CI.
inline ReproRow criterion_1() {
  return repro::timed(
      1, "threshold: two-sided gamble, exponential tails",
      "0.25226 +/- 5e-4, < 5 s", [](ReproRow& row) {
        auto res = dominance_threshold(repro::g_prime(), repro::null_option(),
                                       repro::laplace_500ci());
        row.detail = "threshold = " + repro::fmt(res.value);
        row.pass = std::abs(res.value - 0.25226) <= 5e-4;
      });
}

// 2. Long-odds variant of the same gamble.
inline ReproRow criterion_2() {
  return repro::timed(
      2, "threshold: long-odds gamble, exponential tails",
      "0.0030047 +/- 5e-5, < 5 s", [](ReproRow& row) {
        auto res = dominance_threshold(repro::g_double_prime(),
                                       repro::null_option(),
                                       repro::laplace_500ci());
        row.detail = "threshold = " + repro::fmt(res.value);
        row.pass = std::abs(res.value - 0.0030047) <= 5e-5;
      });
}

// 3. Same two thresholds under polynomial (Cauchy) tails.
inline ReproRow criterion_3() {
  return repro::timed(
      3, "thresholds under Cauchy tails",
      "0.25969 +/- 5e-4 and 0.009452 +/- 1e-4, < 10 s", [](ReproRow& row) {
        auto b = repro::cauchy_500ci();
        auto r1 =
            dominance_threshold(repro::g_prime(), repro::null_option(), b);
        auto r2 = dominance_threshold(repro::g_double_prime(),
                                      repro::null_option(), b);
        row.detail = "thresholds = " + repro::fmt(r1.value) + ", " +
                     repro::fmt(r2.value);
        row.pass = std::abs(r1.value - 0.25969) <= 5e-4 &&
                   std::abs(r2.value - 0.009452) <= 1e-4;
      });
}

// 4. Even-odds gamble dominates the null option under Cauchy(0,10).
inline ReproRow criterion_4() {
  return repro::timed(
      4, "even-odds gamble vs null, Cauchy(0,10)",
      "verdict Dominates, min gap > 0, < 2 s", [](ReproRow& row) {
        auto cert = dominates(repro::basic_gamble(), repro::null_option(),
                              make_cauchy(0, 10));
        row.detail = std::string("verdict = ") + to_string(cert.verdict) +
                     ", min gap = " + repro::fmt(cert.min_gap);
        row.pass = cert.verdict == Verdict::Dominates && cert.min_gap > 0;
      });
}

// 5. Minimum price of a 1% shot at an unbounded prize, Laplace scale 1000.
inline ReproRow criterion_5() {
  return repro::timed(
      5, "wager minimum price, p=.01, Laplace scale 1000",
      "price in (10, 11), < 5 s", [](ReproRow& row) {
        double t = wager_minimum_price(0.01, make_laplace(0, 1000));
        row.detail = "price = " + repro::fmt(t);
        row.pass = t > 10 && t < 11;
      });
}

// 6. The fourteen-case vacuum-dominance suite.
inline ReproRow criterion_6() {
  return repro::timed(6, "case suite", "14/14 verdicts match, < 1 s",
                      [](ReproRow& row) {
                        auto cases = case_suite();
                        int ok = 0;
                        std::string bad;
                        for (const auto& c : cases) {
                          if (c.match)
                            ++ok;
                          else
                            bad += " " + std::to_string(c.number);
                        }
                        row.detail = std::to_string(ok) + "/" +
                                     std::to_string(cases.size()) + " match" +
                                     (bad.empty() ? "" : "; failing:" + bad);
                        row.pass = ok == int(cases.size());
                      });
}

// Randomized sandwich check shared by criterion 7 and the unit tests: the
// ratio bound certifies dominance, and dominance implies the convolution
// bound.
struct SandwichStats {
  int instances = 0;
  int ubt_hits = 0;        // ratio bound fired
  int dominant = 0;        // verdict Dominates
  int violations = 0;
};

inline SandwichStats sandwich_suite(int instances, std::uint64_t seed) {
  SandwichStats st;
  std::uint64_t ctr = 0;
  auto bits = [&] { return mc::draw_bits(seed, 7, ctr++); };
  auto unit = [&] { return mc::to_unit(bits()); };

  for (int trial = 0; trial < instances; ++trial) {
    ++st.instances;
    // random simple prospects: 2-4 outcomes, payoffs on a half-integer
    // lattice in [-8, 8], probabilities in eighths
    auto random_prospect = [&] {
      while (true) {
        int n = 2 + int(bits() % 3);
        std::vector<int> cuts;  // composition of 8 into n positive parts
        for (int k = 0; k < n - 1; ++k) cuts.push_back(1 + int(bits() % 7));
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        std::vector<Outcome> outs;
        int prev = 0;
        for (size_t k = 0; k <= cuts.size(); ++k) {
          int hi = k < cuts.size() ? cuts[k] : 8;
          if (hi == prev) continue;
          double payoff = 0.5 * double(int(bits() % 33) - 16);
          outs.push_back({payoff, Rational(hi - prev, 8)});
          prev = hi;
        }
        try {
          return SimpleProspect(outs);
        } catch (const std::exception&) {
          continue;  // duplicate payoffs may collapse to a single outcome
        }
      }
    };
    auto oi = random_prospect(), oj = random_prospect();
    if (DeltaFunction(oi, oj).is_zero()) continue;

    Background b = (bits() % 2) ? make_laplace(0, 0.5 + 31.5 * unit())
                                : make_cauchy(0, 0.5 + 31.5 * unit());
    auto rep = bound_report(oi, oj, b);
    auto cert = dominates(oi, oj, b);
    bool dom = cert.verdict == Verdict::Dominates;
    if (rep.ubt_satisfied) {
      ++st.ubt_hits;
      if (!dom) ++st.violations;
    }
    if (dom) {
      ++st.dominant;
      if (!rep.lbt_satisfied) ++st.violations;
    }
  }
  return st;
}

// 7. Bound-theorem sandwich over randomized instances.
inline ReproRow criterion_7(int instances = 1000) {
  return repro::timed(
      7, "bound-theorem sandwich, randomized",
      "0 violations over 1000 instances, < 60 s", [&](ReproRow& row) {
        auto st = sandwich_suite(instances, 0x5eedULL);
        row.detail = std::to_string(st.instances) + " instances, " +
                     std::to_string(st.ubt_hits) + " ratio-bound hits, " +
                     std::to_string(st.dominant) + " dominant, " +
                     std::to_string(st.violations) + " violations";
        row.pass = st.violations == 0 && st.instances == instances;
      });
}

// 8. Scale ladder: threshold decreases toward .25, rate toward 1.
inline ReproRow criterion_8(int ladder_size = 15) {
  return repro::timed(
      8, "asymptotic convergence over scale ladder",
      "threshold monotone down to 0.25; rate monotone down to 1, < 120 s",
      [&](ReproRow& row) {
        auto fam = repro::g_prime();
        auto n = repro::null_option();
        auto g = repro::basic_gamble();
        double base = laplace_scale_from_ci95(500);
        std::vector<double> thresholds, rates;
        for (int k = 0; k < ladder_size; ++k) {
          Background b = make_laplace(0, std::ldexp(base, k));
          thresholds.push_back(dominance_threshold(fam, n, b).value);
          rates.push_back(*rate(g, n, b));
        }
        bool mono = true;
        for (size_t k = 1; k < thresholds.size(); ++k)
          if (!(thresholds[k] < thresholds[k - 1] && rates[k] < rates[k - 1]))
            mono = false;
        bool limits = thresholds.back() > 0.25 && rates.back() > 1 &&
                      thresholds.back() - 0.25 < 1e-4 && rates.back() - 1 < 1e-4;
        row.detail = "threshold: " + repro::fmt(thresholds.front()) + " -> " +
                     repro::fmt(thresholds.back()) + "; rate: " +
                     repro::fmt(rates.front()) + " -> " +
                     repro::fmt(rates.back());
        row.pass = mono && limits;
      });
}

// 9. Long-shot threshold lands within a decade of 1/scale_factor.
inline ReproRow criterion_9() {
  return repro::timed(
      9, "long-shot threshold vs 1/scale_factor",
      "threshold * scale_factor in [0.1, 10] for s in {1e3,1e4,1e5}, < 60 s",
      [](ReproRow& row) {
        auto sure = SimpleProspect({{1.0, 1}});
        bool ok = true;
        std::string parts;
        for (double s : {1e3, 1e4, 1e5}) {
          Background b = make_laplace(0, s);
          double sf = b.scale_factor();
          auto res = longshot_threshold(sure, 50 * sf, b);
          double product = res.threshold * sf;
          parts += (parts.empty() ? "" : ", ") + repro::fmt(product);
          if (!(product >= 0.1 && product <= 10)) ok = false;
        }
        row.detail = "threshold * scale_factor = " + parts;
        row.pass = ok;
      });
}

// 10. Monte Carlo confirmation of the analytic verdicts behind 1-5.
inline ReproRow criterion_10(long long samples = 10'000'000) {
  return repro::timed(
      10, "Monte Carlo oracle consistency",
      "all verdicts Consistent at 1e7 samples, .999 CI, < 10 min",
      [&](ReproRow& row) {
        OracleConfig cfg;
        cfg.sample_count = samples;
        cfg.seed = 2026;
        auto n = repro::null_option();
        struct Check {
          const char* label;
          SimpleProspect oi, oj;
          Background b;
        };
        std::vector<Check> checks = {
            {"gamble .26 laplace", repro::g_prime().instantiate(Rational(26, 100)),
             n, repro::laplace_500ci()},
            {"long-odds .0035 laplace",
             repro::g_double_prime().instantiate(Rational(35, 10000)), n,
             repro::laplace_500ci()},
            {"gamble .27 cauchy", repro::g_prime().instantiate(Rational(27, 100)),
             n, repro::cauchy_500ci()},
            {"long-odds .01 cauchy",
             repro::g_double_prime().instantiate(Rational(1, 100)), n,
             repro::cauchy_500ci()},
            {"even-odds cauchy(0,10)", repro::basic_gamble(), n,
             make_cauchy(0, 10)},
            // large finite prize standing in for the unbounded one; the gap
            // below the prize is identical
            {"wager price 10 laplace(0,1000)",
             SimpleProspect({{0.0, Rational(99, 100)},
                             {1e6, Rational(1, 100)}}),
             SimpleProspect({{10.0, 1}}), make_laplace(0, 1000)},
        };
        bool ok = true;
        std::string parts;
        for (auto& c : checks) {
          auto rep = verify_dominance(c.oi, c.oj, c.b, cfg);
          bool good = rep.status == OracleStatus::Consistent &&
                      rep.analytic == Verdict::Dominates;
          if (!good) ok = false;
          parts += std::string(parts.empty() ? "" : "; ") + c.label + ": " +
                   (good ? "consistent" : "FAILED");
        }
        row.detail = parts;
        row.pass = ok;
      });
}

inline std::vector<ReproRow> reproduce_all(long long oracle_samples =
                                               10'000'000) {
  return {criterion_1(), criterion_2(), criterion_3(), criterion_4(),
          criterion_5(), criterion_6(), criterion_7(), criterion_8(),
          criterion_9(), criterion_10(oracle_samples)};
}

}  // namespace domlab
