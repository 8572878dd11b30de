#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <tuple>

#include "domlab/errors.hpp"
#include "domlab/numeric.hpp"
#include "domlab/rational.hpp"
#include "domlab/simple_prospect.hpp"

namespace domlab {

// Payoff over an extended domain: reals, +/-inf, an "undefined magnitude"
// element incomparable with all of them (optionally carrying an ordinal rank
// within its own family), and purely ordinal ranks.
struct GeneralPayoff {
  enum class Kind { Finite, PlusInf, MinusInf, Incomparable, Ordinal };

  Kind kind = Kind::Finite;
  double value = 0;                // Finite only
  int family = 0;                  // Incomparable only
  std::optional<int> rank;         // Incomparable (optional) and Ordinal

  static GeneralPayoff finite(double v) { return {Kind::Finite, v, 0, {}}; }
  static GeneralPayoff plus_inf() { return {Kind::PlusInf, 0, 0, {}}; }
  static GeneralPayoff minus_inf() { return {Kind::MinusInf, 0, 0, {}}; }
  static GeneralPayoff incomparable(int family = 0,
                                    std::optional<int> rank = {}) {
    return {Kind::Incomparable, 0, family, rank};
  }
  static GeneralPayoff ordinal(int rank) {
    return {Kind::Ordinal, 0, 0, rank};
  }

  bool operator==(const GeneralPayoff&) const = default;
};

// Partial order. Extended reals are totally ordered among themselves;
// ordinals among themselves by rank; incomparable elements compare only
// within their own family, and only when both carry ranks (an unranked one
// is equivalent to itself alone). Everything else is unordered.
inline std::partial_ordering general_compare(const GeneralPayoff& a,
                                             const GeneralPayoff& b) {
  using K = GeneralPayoff::Kind;
  auto real_like = [](K k) {
    return k == K::Finite || k == K::PlusInf || k == K::MinusInf;
  };
  if (real_like(a.kind) && real_like(b.kind)) {
    auto height = [](const GeneralPayoff& p) {
      if (p.kind == K::MinusInf) return -1;
      if (p.kind == K::PlusInf) return 1;
      return 0;
    };
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha <=> hb;
    if (ha != 0) return std::partial_ordering::equivalent;
    return std::partial_ordering(a.value <=> b.value);
  }
  if (a.kind == K::Ordinal && b.kind == K::Ordinal) return *a.rank <=> *b.rank;
  if (a.kind == K::Incomparable && b.kind == K::Incomparable &&
      a.family == b.family) {
    if (a.rank && b.rank) return *a.rank <=> *b.rank;
    if (!a.rank && !b.rank) return std::partial_ordering::equivalent;
  }
  return std::partial_ordering::unordered;
}

// Finite prospect over GeneralPayoff. Probabilities are exact and sum to 1.
// Ordinal payoffs may not share a prospect with real-valued ones.
class GeneralProspect {
 public:
  GeneralProspect(std::vector<std::pair<GeneralPayoff, Rational>> outcomes)
      : outcomes_(std::move(outcomes)) {
    Rational total = 0;
    bool has_ordinal = false, has_real = false;
    for (auto& [pay, prob] : outcomes_) {
      if (prob <= 0) throw SchemaError("outcome probability must be positive");
      total += prob;
      using K = GeneralPayoff::Kind;
      if (pay.kind == K::Ordinal) has_ordinal = true;
      if (pay.kind == K::Finite || pay.kind == K::PlusInf ||
          pay.kind == K::MinusInf)
        has_real = true;
    }
    if (total != 1) throw ProbabilitySum("probabilities must sum to 1");
    if (has_ordinal && has_real)
      throw MixedDomain("ordinal and real payoffs cannot share a prospect");
  }

  const std::vector<std::pair<GeneralPayoff, Rational>>& outcomes() const {
    return outcomes_;
  }

  // Pr(payoff at least as good as x): mass of the weak upper set of x.
  Rational upper_mass(const GeneralPayoff& x) const {
    Rational m = 0;
    for (const auto& [pay, prob] : outcomes_) {
      auto c = general_compare(pay, x);
      if (c == std::partial_ordering::greater ||
          c == std::partial_ordering::equivalent)
        m += prob;
    }
    return m;
  }

 private:
  std::vector<std::pair<GeneralPayoff, Rational>> outcomes_;
};

// Strict first-order dominance over the partial order: for every realized
// payoff x, Pr(O_i at least as good as x) >= Pr(O_j ...), strictly for some
// x. Thresholds range over the realized payoffs of both prospects.
inline bool general_dominates(const GeneralProspect& oi,
                              const GeneralProspect& oj) {
  bool has_ordinal = false, has_real = false;
  std::vector<GeneralPayoff> thresholds;
  for (const auto* o : {&oi, &oj})
    for (const auto& [pay, prob] : o->outcomes()) {
      thresholds.push_back(pay);
      using K = GeneralPayoff::Kind;
      if (pay.kind == K::Ordinal) has_ordinal = true;
      if (pay.kind == K::Finite || pay.kind == K::PlusInf ||
          pay.kind == K::MinusInf)
        has_real = true;
    }
  if (has_ordinal && has_real)
    throw MixedDomain("cannot compare ordinal and real-valued prospects");

  bool strict = false;
  for (const auto& x : thresholds) {
    Rational mi = oi.upper_mass(x), mj = oj.upper_mass(x);
    if (mi < mj) return false;
    if (mi > mj) strict = true;
  }
  return strict;
}

namespace detail {
inline Rational pow2_inv(int k) {
  return Rational(1, boost::multiprecision::cpp_int(1) << k);
}
}  // namespace detail

// Countably supported prospect given by a term generator (k = 1, 2, ...)
// with a closed-form tail-mass bound tail(n) = sum of probabilities beyond
// the first n terms.
class CountableProspect {
 public:
  using Term = std::pair<double, Rational>;

  CountableProspect(std::function<Term(int)> term,
                    std::function<Rational(int)> tail, int support_size = -1)
      : term_(std::move(term)), tail_(std::move(tail)),
        support_size_(support_size) {}

  // Terms realized within the first `depth` entries.
  std::vector<Term> terms(int depth) const {
    int n = support_size_ >= 0 ? std::min(support_size_, depth) : depth;
    std::vector<Term> out;
    out.reserve(n);
    for (int k = 1; k <= n; ++k) out.push_back(term_(k));
    return out;
  }

  Rational tail(int depth) const {
    if (support_size_ >= 0 && depth >= support_size_) return 0;
    return tail_(depth);
  }

  static CountableProspect from_finite(const SimpleProspect& p) {
    auto outs = p.outcomes();
    return CountableProspect(
        [outs](int k) {
          return Term{outs[size_t(k - 1)].payoff, outs[size_t(k - 1)].prob};
        },
        [](int) { return Rational(0); }, int(outs.size()));
  }

  // Doubling game: 2^k with probability 2^-k; shift adds a constant to
  // every payoff. tail(n) = 2^-n.
  static CountableProspect st_petersburg(double shift = 0) {
    return CountableProspect(
        [shift](int k) {
          return Term{std::ldexp(1.0, k) + shift,
                      detail::pow2_inv(k)};
        },
        [](int n) { return detail::pow2_inv(n); });
  }

  // Alternating game: (-1)^(k-1) * 2^k / k with probability 2^-k; shift as
  // above. tail(n) = 2^-n.
  static CountableProspect pasadena(double shift = 0) {
    return CountableProspect(
        [shift](int k) {
          double mag = std::ldexp(1.0, k) / k;
          return Term{(k % 2 ? mag : -mag) + shift,
                      detail::pow2_inv(k)};
        },
        [](int n) { return detail::pow2_inv(n); });
  }

 private:
  std::function<Term(int)> term_;
  std::function<Rational(int)> tail_;
  int support_size_;
};

enum class CountableVerdict { Dominates, Neither, Undecided };

inline std::string to_string(CountableVerdict v) {
  switch (v) {
    case CountableVerdict::Dominates: return "Dominates";
    case CountableVerdict::Neither: return "Neither";
    default: return "Undecided";
  }
}

namespace detail {

inline Rational truncated_ccdf(const std::vector<CountableProspect::Term>& ts,
                               double x) {
  Rational m = 0;
  for (const auto& [pay, prob] : ts)
    if (pay >= x) m += prob;
  return m;
}

// Certified one-sided check: does oi dominate oj, given only the first
// `depth` terms? Tail mass can sit anywhere, so an inequality at threshold x
// is certified only when the truncated gap clears the tail bounds.
enum class OneSided { Certified, RefutedAt, Uncertain };

inline OneSided certify_dominance(const std::vector<CountableProspect::Term>& ti,
                                  const Rational& tail_i,
                                  const std::vector<CountableProspect::Term>& tj,
                                  const Rational& tail_j, bool& strict) {
  std::vector<double> xs;
  for (const auto& [pay, prob] : ti) xs.push_back(pay);
  for (const auto& [pay, prob] : tj) xs.push_back(pay);
  num::sort_unique(xs);
  strict = false;
  bool uncertain = false;
  for (double x : xs) {
    Rational ci = truncated_ccdf(ti, x), cj = truncated_ccdf(tj, x);
    if (ci + tail_i < cj) return OneSided::RefutedAt;  // certified violation
    if (ci >= cj + tail_j) {
      if (ci > cj + tail_j) strict = true;
    } else {
      uncertain = true;
    }
  }
  // Above every realized payoff, j's remaining tail mass could sit anywhere,
  // so dominance there cannot be certified unless that tail is empty.
  if (tail_j > 0) uncertain = true;
  return uncertain ? OneSided::Uncertain : OneSided::Certified;
}

}  // namespace detail

// Dominance between countable prospects, decided from the first `depth`
// terms plus tail bounds. A coupling fast path handles pairs that realize
// the same probability sequence with pointwise-ordered payoffs (the +1
// constructions); otherwise the CCDF comparison must be certified against
// the tail masses at every realized threshold.
inline CountableVerdict countable_dominates(const CountableProspect& oi,
                                            const CountableProspect& oj,
                                            int depth) {
  auto ti = oi.terms(depth), tj = oj.terms(depth);
  Rational tail_i = oi.tail(depth), tail_j = oj.tail(depth);

  if (ti.size() == tj.size() && tail_i == tail_j) {
    bool aligned = true, ge = true, strict = false;
    for (size_t k = 0; k < ti.size(); ++k) {
      if (ti[k].second != tj[k].second) { aligned = false; break; }
      if (ti[k].first < tj[k].first) ge = false;
      if (ti[k].first > tj[k].first) strict = true;
    }
    if (aligned && ge && strict) return CountableVerdict::Dominates;
  }

  bool strict_ij = false, strict_ji = false;
  auto ij = detail::certify_dominance(ti, tail_i, tj, tail_j, strict_ij);
  auto ji = detail::certify_dominance(tj, tail_j, ti, tail_i, strict_ji);
  if (ij == detail::OneSided::Certified && strict_ij)
    return CountableVerdict::Dominates;
  if (ij == detail::OneSided::RefutedAt && ji == detail::OneSided::RefutedAt)
    return CountableVerdict::Neither;
  if (ij == detail::OneSided::RefutedAt && ji == detail::OneSided::Certified &&
      !strict_ji)
    return CountableVerdict::Neither;  // j weakly matches i but never exceeds
  return CountableVerdict::Undecided;
}

// ---------------------------------------------------------------------------
// Case suite: fourteen vacuum-dominance vignettes with known verdicts.

struct CaseComparison {
  std::string left, right;     // option labels
  std::string expected;        // "Dominates" or "Neither"
  std::string computed;
};

struct CaseRecord {
  int number = 0;
  std::string name;
  std::string expectational;   // verdict under expected-value reasoning
  std::string dominance;       // verdict under the dominance rule
  std::vector<CaseComparison> comparisons;
  bool match = true;
};

namespace detail {

inline std::string general_verdict(const GeneralProspect& a,
                                   const GeneralProspect& b) {
  if (general_dominates(a, b)) return "Dominates";
  if (general_dominates(b, a)) return "DominatedBy";
  return "Neither";
}

}  // namespace detail

inline std::vector<CaseRecord> case_suite(int countable_depth = 64) {
  using GP = GeneralPayoff;
  std::vector<CaseRecord> out;

  auto run_general = [&](int number, std::string name, std::string ev,
                         std::string dv, const GeneralProspect& o1,
                         const GeneralProspect& o2, std::string expected) {
    CaseRecord rec{number, std::move(name), std::move(ev), std::move(dv), {}};
    CaseComparison c{"O2", "O1", expected,
                     detail::general_verdict(o2, o1)};
    rec.match = c.computed == c.expected;
    rec.comparisons.push_back(std::move(c));
    out.push_back(std::move(rec));
  };

  auto run_countable = [&](int number, std::string name, std::string ev,
                           std::string dv,
                           std::vector<std::tuple<std::string, std::string,
                                                  CountableProspect,
                                                  CountableProspect,
                                                  std::string>> comps) {
    CaseRecord rec{number, std::move(name), std::move(ev), std::move(dv), {}};
    for (auto& [l, r, a, b, expected] : comps) {
      CaseComparison c{l, r, expected,
                       to_string(countable_dominates(a, b, countable_depth))};
      if (c.computed != c.expected) rec.match = false;
      rec.comparisons.push_back(std::move(c));
    }
    out.push_back(std::move(rec));
  };

  // 1: a guaranteed 10 against 9 with a 1% shot at the infinite prize.
  run_general(1, "Wager (Costly)", "O2 required", "either permissible",
              GeneralProspect({{GP::finite(10), 1}}),
              GeneralProspect({{GP::finite(9), Rational(99, 100)},
                               {GP::plus_inf(), Rational(1, 100)}}),
              "Neither");
  // 2: same but the wager costs nothing.
  run_general(2, "Wager (Costless)", "O2 required", "O2 required",
              GeneralProspect({{GP::finite(10), 1}}),
              GeneralProspect({{GP::finite(10), Rational(99, 100)},
                               {GP::plus_inf(), Rational(1, 100)}}),
              "Dominates");
  // 3: both options carry the infinite prize; O2 with higher probability.
  run_general(3, "Wager (Regular)", "either permissible", "O2 required",
              GeneralProspect({{GP::finite(10), Rational(99, 100)},
                               {GP::plus_inf(), Rational(1, 100)}}),
              GeneralProspect({{GP::finite(10), Rational(9, 10)},
                               {GP::plus_inf(), Rational(1, 10)}}),
              "Dominates");
  // 4: infinite prizes of both signs.
  run_general(4, "Wager (Angry God)", "either permissible", "O2 required",
              GeneralProspect({{GP::minus_inf(), Rational(9, 100)},
                               {GP::finite(9), Rational(9, 10)},
                               {GP::plus_inf(), Rational(1, 100)}}),
              GeneralProspect({{GP::minus_inf(), Rational(1, 100)},
                               {GP::finite(9), Rational(9, 10)},
                               {GP::plus_inf(), Rational(9, 100)}}),
              "Dominates");

  auto sure100 = CountableProspect::from_finite(SimpleProspect({{100.0, 1}}));
  // 5: doubling game against a sure 100.
  run_countable(5, "Doubling Game", "O2 required", "either permissible",
                {{"O2", "O1", CountableProspect::st_petersburg(), sure100,
                  "Neither"}});
  // 6: the +1 sweetened doubling game prohibits the plain one.
  run_countable(
      6, "Doubling Game +1",
      "O2, O3 permissible; O1 prohibited", "O1, O3 permissible; O2 prohibited",
      {{"O3", "O2", CountableProspect::st_petersburg(1),
        CountableProspect::st_petersburg(), "Dominates"},
       {"O2", "O1", CountableProspect::st_petersburg(), sure100, "Neither"},
       {"O3", "O1", CountableProspect::st_petersburg(1), sure100, "Neither"}});
  // 7: alternating game with undefined expectation against a sure 100.
  run_countable(7, "Alternating Game", "either permissible",
                "either permissible",
                {{"O2", "O1", CountableProspect::pasadena(), sure100,
                  "Neither"}});
  // 8: the +1 sweetened alternating game prohibits the plain one.
  run_countable(
      8, "Alternating Game +1",
      "all permissible", "O1, O3 permissible; O2 prohibited",
      {{"O3", "O2", CountableProspect::pasadena(1),
        CountableProspect::pasadena(), "Dominates"},
       {"O2", "O1", CountableProspect::pasadena(), sure100, "Neither"},
       {"O3", "O1", CountableProspect::pasadena(1), sure100, "Neither"}});

  // 9: two incomparable payoffs, each sweetened within its own family.
  auto a = GP::incomparable(1, 1), ap = GP::incomparable(1, 2);
  auto b = GP::incomparable(2, 1), bp = GP::incomparable(2, 2);
  run_general(9, "Opaque Sweetening", "either permissible", "O2 required",
              GeneralProspect({{a, Rational(1, 2)}, {b, Rational(1, 2)}}),
              GeneralProspect({{ap, Rational(1, 2)}, {bp, Rational(1, 2)}}),
              "Dominates");
  // 10: only one branch sweetened.
  run_general(10, "One-Sided Sweetening", "either permissible", "O2 required",
              GeneralProspect({{a, Rational(1, 2)}, {b, Rational(1, 2)}}),
              GeneralProspect({{ap, Rational(1, 2)}, {b, Rational(1, 2)}}),
              "Dominates");
  // 11: purely ordinal ranks.
  run_general(11, "Ordinal Risk", "either permissible", "O2 required",
              GeneralProspect({{GP::ordinal(1), Rational(3, 10)},
                               {GP::ordinal(2), Rational(7, 10)}}),
              GeneralProspect({{GP::ordinal(2), Rational(7, 10)},
                               {GP::ordinal(3), Rational(3, 10)}}),
              "Dominates");
  // 12: equal chances of infinite outcomes of each sign; finite sweetening.
  run_general(12, "Heaven or Hell", "either permissible", "O2 required",
              GeneralProspect({{GP::minus_inf(), Rational(45, 100)},
                               {GP::finite(10), Rational(1, 10)},
                               {GP::plus_inf(), Rational(45, 100)}}),
              GeneralProspect({{GP::minus_inf(), Rational(45, 100)},
                               {GP::finite(11), Rational(1, 10)},
                               {GP::plus_inf(), Rational(45, 100)}}),
              "Dominates");
  // 13: mass on the undefined magnitude, incomparable with everything.
  auto undef = GP::incomparable(0);
  run_general(13, "Heaven + Hell", "either permissible", "O2 required",
              GeneralProspect({{GP::minus_inf(), Rational(5, 100)},
                               {GP::finite(10), Rational(1, 10)},
                               {GP::plus_inf(), Rational(5, 100)},
                               {undef, Rational(8, 10)}}),
              GeneralProspect({{GP::minus_inf(), Rational(5, 100)},
                               {GP::finite(11), Rational(1, 10)},
                               {GP::plus_inf(), Rational(5, 100)},
                               {undef, Rational(8, 10)}}),
              "Dominates");
  // 14: undefined magnitudes carrying ordinal ranks of their own.
  run_general(
      14, "Ordinal Heaven + Hell", "either permissible", "O2 required",
      GeneralProspect({{GP::finite(10), Rational(15, 100)},
                       {GP::finite(15), Rational(35, 100)},
                       {GP::incomparable(0, 1), Rational(15, 100)},
                       {GP::incomparable(0, 2), Rational(35, 100)}}),
      GeneralProspect({{GP::finite(15), Rational(35, 100)},
                       {GP::finite(20), Rational(15, 100)},
                       {GP::incomparable(0, 2), Rational(35, 100)},
                       {GP::incomparable(0, 3), Rational(15, 100)}}),
      "Dominates");

  return out;
}

}  // namespace domlab
