#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "domlab/background.hpp"
#include "domlab/overall.hpp"
#include "domlab/simple_prospect.hpp"

namespace domlab {

struct OracleConfig {
  long long sample_count = 10'000'000;  // >= 1e4
  std::uint64_t seed = 0;
  double ci_level = 0.999;
};

namespace mc {

// Counter-based generator: (seed, stream, index) -> 64 bits, so shards can
// reproduce any slice of the sequential stream.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t draw_bits(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ index);
}

// Uniform in (0, 1): 53 bits, offset half an ulp away from the endpoints.
inline double to_unit(std::uint64_t bits) {
  return (double(bits >> 11) + 0.5) * 0x1p-53;
}

// Categorical sampler with thresholds scaled to 2^64, computed exactly from
// the rational cumulative probabilities.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const SimpleProspect& p) {
    using boost::multiprecision::cpp_int;
    cpp_int scale = cpp_int(1) << 64;
    Rational cum = 0;
    for (const auto& o : p.outcomes()) {
      cum += o.prob;
      cpp_int t = static_cast<cpp_int>(boost::multiprecision::numerator(cum) *
                                       scale /
                                       boost::multiprecision::denominator(cum));
      thresholds_.push_back(t >= scale ? ~0ULL
                                       : static_cast<std::uint64_t>(t));
      payoffs_.push_back(o.payoff);
    }
    thresholds_.back() = ~0ULL;  // the last bucket absorbs rounding
  }

  double operator()(std::uint64_t bits) const {
    auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), bits);
    return payoffs_[size_t(it - thresholds_.begin())];
  }

 private:
  std::vector<std::uint64_t> thresholds_;
  std::vector<double> payoffs_;
};

inline int thread_count() {
  if (const char* env = std::getenv("DOMLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

}  // namespace mc

struct GapEstimate {
  double x = 0;
  double ccdf_i = 0, ccdf_j = 0;
  double gap = 0;
  double lo = 0, hi = 0;  // CI on the gap
};

// Empirical CCDF gap at each x: one background draw per sample, independent
// simple draws per option, overall payoff = sum. Per-x counts accumulate via
// range updates over the sorted grid; the gap CI differences the per-option
// Wilson intervals.
inline std::vector<GapEstimate> empirical_ccdf_gap(const SimpleProspect& oi,
                                                   const SimpleProspect& oj,
                                                   const Background& b,
                                                   std::vector<double> xs,
                                                   const OracleConfig& cfg) {
  if (cfg.sample_count < 10'000)
    throw std::invalid_argument("oracle sample_count must be >= 1e4");
  num::sort_unique(xs);
  const size_t m = xs.size();
  if (m == 0) return {};
  mc::CategoricalSampler sample_i(oi), sample_j(oj);

  // diff[k] counts samples landing in [xs[k], xs[k+1]); suffix sums give
  // counts of samples >= xs[k].
  auto shard = [&](long long lo, long long hi, std::vector<long long>& di,
                   std::vector<long long>& dj) {
    di.assign(m + 1, 0);
    dj.assign(m + 1, 0);
    auto bump = [&](std::vector<long long>& d, double v) {
      size_t idx = size_t(
          std::upper_bound(xs.begin(), xs.end(), v) - xs.begin());
      if (idx > 0) ++d[idx - 1];  // v >= xs[k] for all k < idx
    };
    for (long long k = lo; k < hi; ++k) {
      double u = mc::to_unit(mc::draw_bits(cfg.seed, 0, std::uint64_t(k)));
      double bg = b.quantile(u);
      bump(di, bg + sample_i(mc::draw_bits(cfg.seed, 1, std::uint64_t(k))));
      bump(dj, bg + sample_j(mc::draw_bits(cfg.seed, 2, std::uint64_t(k))));
    }
  };

  int nt = std::min<long long>(mc::thread_count(), cfg.sample_count);
  std::vector<std::vector<long long>> dis(nt), djs(nt);
  std::vector<std::thread> pool;
  long long chunk = (cfg.sample_count + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    long long lo = t * chunk, hi = std::min(cfg.sample_count, lo + chunk);
    pool.emplace_back(shard, lo, hi, std::ref(dis[t]), std::ref(djs[t]));
  }
  for (auto& th : pool) th.join();

  std::vector<long long> ci(m, 0), cj(m, 0);
  for (int t = 0; t < nt; ++t)
    for (size_t k = 0; k < m; ++k) {
      ci[k] += dis[t][k];
      cj[k] += djs[t][k];
    }
  // suffix sums: count of samples >= xs[k]
  for (size_t k = m - 1; k-- > 0;) {
    ci[k] += ci[k + 1];
    cj[k] += cj[k + 1];
  }

  double z = detail::norm_quantile(0.5 * (1 + cfg.ci_level));
  double n = double(cfg.sample_count);
  auto wilson = [&](long long count) {
    double p = double(count) / n;
    double denom = 1 + z * z / n;
    double center = (p + z * z / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
    return std::pair{center - half, center + half};
  };

  std::vector<GapEstimate> out(m);
  for (size_t k = 0; k < m; ++k) {
    auto [li, hi_i] = wilson(ci[k]);
    auto [lj, hj] = wilson(cj[k]);
    out[k] = {xs[k], double(ci[k]) / n, double(cj[k]) / n,
              double(ci[k] - cj[k]) / n, li - hj, hi_i - lj};
  }
  return out;
}

enum class OracleStatus { Consistent, Refuted };

struct OracleReport {
  OracleStatus status = OracleStatus::Consistent;
  Verdict analytic = Verdict::Inconclusive;
  std::optional<double> refuted_at;   // x where the verdict failed
  std::optional<double> witness_x;    // analytic witness checked (Neither)
  std::vector<GapEstimate> estimates;
};

// Cross-checks the analytic verdict against sampled gaps. For a Dominates
// verdict no grid point may have its CI entirely below zero; for a verdict
// with a negative-gap witness, the sampled gap there must be negative beyond
// its CI.
inline OracleReport verify_dominance(const SimpleProspect& oi,
                                     const SimpleProspect& oj,
                                     const Background& b,
                                     const OracleConfig& cfg,
                                     std::optional<std::vector<double>> xs_in =
                                         std::nullopt,
                                     size_t grid_points = 1000) {
  auto cert = dominates(oi, oj, b);
  OracleReport rep;
  rep.analytic = cert.verdict;

  std::vector<double> xs =
      xs_in ? std::move(*xs_in)
            : num::linspace(cert.scan_lo, cert.scan_hi, grid_points);
  bool has_witness = (cert.verdict == Verdict::Neither ||
                      cert.verdict == Verdict::DominatedBy) &&
                     !cert.decided_in_vacuum && cert.min_gap < 0;
  if (has_witness) {
    // The certificate's argmin is on the normalized gap and often sits so
    // deep in a tail that the absolute gap there is unsampleably small. For
    // the oracle, pick the most negative absolute gap instead.
    detail::GapEvaluator ev(DeltaFunction(oi, oj), b);
    double wx = cert.min_gap_x, wg = ev.gap(wx);
    for (double x : xs)
      if (double g = ev.gap(x); g < wg) {
        wg = g;
        wx = x;
      }
    rep.witness_x = wx;
    xs.push_back(wx);
  }
  rep.estimates = empirical_ccdf_gap(oi, oj, b, xs, cfg);

  if (cert.verdict == Verdict::Dominates) {
    for (const auto& e : rep.estimates)
      if (e.hi < 0) {
        rep.status = OracleStatus::Refuted;
        rep.refuted_at = e.x;
        return rep;
      }
  } else if (has_witness) {
    for (const auto& e : rep.estimates)
      if (e.x == *rep.witness_x && !(e.hi < 0)) {
        rep.status = OracleStatus::Refuted;
        rep.refuted_at = e.x;
        return rep;
      }
  }
  return rep;
}

}  // namespace domlab
