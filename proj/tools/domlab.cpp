// domlab: first-order stochastic dominance under background uncertainty.
//
// Subcommands: check, bounds, threshold, price, longshot, curves, cases,
// oracle, reproduce. Situation files are JSON (see README); all subcommands
// support --json, and --out redirects the report to a file.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "domlab/domlab.hpp"

namespace {

using domlab::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw domlab::SchemaError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void deliver(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out.good()) throw domlab::SchemaError("cannot write file: " + out_path);
  out << text;
}

struct CommonOpts {
  bool as_json = false;
  std::string out_path;
  void attach(CLI::App* cmd) {
    cmd->add_flag("--json", as_json, "emit a JSON report");
    cmd->add_option("--out", out_path, "write the report to a file");
  }
  void emit(const json& j, const std::string& human) const {
    deliver(as_json ? j.dump(2) + "\n" : human, out_path);
  }
};

struct BackgroundOpts {
  std::string family = "laplace";
  double location = 0;
  std::optional<double> scale, ci95;
  void attach(CLI::App* cmd) {
    cmd->add_option("--background", family,
                    "background family (laplace, cauchy, gaussian)")
        ->check(CLI::IsMember({"laplace", "cauchy", "gaussian"}));
    cmd->add_option("--location", location, "background location parameter");
    cmd->add_option("--scale", scale, "background scale parameter");
    cmd->add_option("--ci95", ci95,
                    "central 95% half-width (alternative to --scale)");
  }
  domlab::Background build() const {
    json j{{"family", family}, {"location", location}};
    if (family == "gaussian") {
      j.erase("location");
      j["mean"] = location;
      if (scale) j["sd"] = *scale;
    } else {
      if (scale) j["scale"] = *scale;
      if (ci95) j["ci95_halfwidth"] = *ci95;
    }
    return domlab::background_from_json(j);
  }
};

json certificate_json(const domlab::DominanceCertificate& cert) {
  return json{{"verdict", domlab::to_string(cert.verdict)},
              {"decided_in_vacuum", cert.decided_in_vacuum},
              {"wide_grid_fallback", cert.wide_grid_fallback},
              {"min_gap", cert.min_gap},
              {"min_gap_x", cert.min_gap_x},
              {"max_gap", cert.max_gap},
              {"max_gap_x", cert.max_gap_x},
              {"scan_lo", cert.scan_lo},
              {"scan_hi", cert.scan_hi}};
}

int run_check(const std::string& file, const std::string& a,
              const std::string& b, size_t grid_points, double tolerance,
              const CommonOpts& common) {
  auto sit = domlab::parse_situation(slurp(file));
  auto oi = sit.option(a).prospect();
  auto oj = sit.option(b).prospect();
  domlab::DominanceOptions opts;
  opts.grid_points = grid_points;
  opts.tangency_tol = tolerance;
  auto cert = domlab::dominates(oi, oj, sit.background, opts);

  std::ostringstream human;
  switch (cert.verdict) {
    case domlab::Verdict::Dominates:
      human << a << " dominates " << b;
      break;
    case domlab::Verdict::DominatedBy:
      human << a << " is dominated by " << b;
      break;
    case domlab::Verdict::Neither:
      human << "neither option dominates";
      break;
    default:
      human << "inconclusive (gap within tangency tolerance)";
  }
  if (!cert.decided_in_vacuum)
    human << "  (min gap " << cert.min_gap << " at x = " << cert.min_gap_x
          << ")";
  human << "\n";

  json j = certificate_json(cert);
  j["a"] = a;
  j["b"] = b;
  common.emit(j, human.str());
  return 0;
}

int run_bounds(const std::string& file, const std::string& a,
               const std::string& b, const CommonOpts& common) {
  auto sit = domlab::parse_situation(slurp(file));
  auto rep = domlab::bound_report(sit.option(a).prospect(),
                                  sit.option(b).prospect(), sit.background);
  std::ostringstream human;
  human << "gain/loss ratio           " << rep.ratio << "\n"
        << "background decay rate     "
        << (rep.rate ? std::to_string(*rep.rate) : std::string("unbounded"))
        << "\n"
        << "upper bound (sufficient)  "
        << (rep.ubt_satisfied ? "satisfied: dominance follows" : "silent")
        << "\n"
        << "lower bound lhs           " << rep.lbt_lhs << "\n"
        << "lower bound rhs           " << rep.lbt_rhs << "\n"
        << "lower bound (necessary)   "
        << (rep.lbt_satisfied ? "satisfied: dominance possible"
                              : "violated: dominance ruled out")
        << "\n";
  json j{{"ratio", rep.ratio},
         {"rate", rep.rate ? json(*rep.rate) : json(nullptr)},
         {"ubt_satisfied", rep.ubt_satisfied},
         {"lbt_lhs", rep.lbt_lhs},
         {"lbt_rhs", rep.lbt_rhs},
         {"lbt_satisfied", rep.lbt_satisfied}};
  common.emit(j, human.str());
  return 0;
}

int run_threshold(const std::string& file, const std::string& family_name,
                  const std::string& opponent, double tolerance,
                  const CommonOpts& common) {
  auto sit = domlab::parse_situation(slurp(file));
  auto fam = sit.option(family_name).family();
  auto opp = sit.option(opponent).prospect();
  auto res = domlab::dominance_threshold(fam, opp, sit.background, tolerance);
  std::ostringstream human;
  human << "dominance threshold p* = " << res.value << "\n"
        << "  ratio-supremum method  "
        << (res.method_a ? std::to_string(*res.method_a)
                         : std::string("not applicable"))
        << "\n"
        << "  verdict bisection      " << res.method_b << " ("
        << res.iterations << " iterations, tolerance " << res.tolerance
        << ")\n";
  json j{{"value", res.value},
         {"method_a", res.method_a ? json(*res.method_a) : json(nullptr)},
         {"method_b", res.method_b},
         {"iterations", res.iterations},
         {"tolerance", res.tolerance}};
  common.emit(j, human.str());
  return 0;
}

int run_price(double wager_p, int doubling_level, const BackgroundOpts& bg,
              const CommonOpts& common) {
  auto b = bg.build();
  if (doubling_level > 0) {
    auto rep = domlab::st_petersburg_price(b, doubling_level);
    std::ostringstream human;
    human << "level  optimistic  pessimistic  increment\n";
    for (const auto& r : rep.rows)
      human << "  " << r.level << "  " << r.price_optimistic << "  "
            << r.price_pessimistic << "  " << r.increment << "\n";
    human << "price bracket at depth " << doubling_level << ": "
          << rep.rows.back().price_pessimistic << " .. " << rep.price
          << (rep.converged ? " (converged)" : " (not converged)") << "\n";
    json rows = json::array();
    for (const auto& r : rep.rows)
      rows.push_back({{"level", r.level},
                      {"price_optimistic", r.price_optimistic},
                      {"price_pessimistic", r.price_pessimistic},
                      {"increment", r.increment}});
    common.emit(
        json{{"rows", rows}, {"price", rep.price}, {"converged", rep.converged}},
        human.str());
    return 0;
  }
  double t = domlab::wager_minimum_price(wager_p, b);
  std::ostringstream human;
  human << "minimum dominating price t* = " << t << " (prize probability "
        << wager_p << ")\n";
  common.emit(json{{"value", t}, {"p", wager_p}}, human.str());
  return 0;
}

int run_longshot(double sure, double payoff, const BackgroundOpts& bg,
                 const CommonOpts& common) {
  auto b = bg.build();
  auto res = domlab::longshot_threshold(
      domlab::SimpleProspect({{sure, domlab::Rational(1)}}), payoff, b);
  std::ostringstream human;
  human << "long-shot dominance threshold p* = " << res.threshold << "\n"
        << "  lower-bound floor            " << res.lbt_floor << "\n"
        << "  1 / scale factor             " << res.inv_scale << "\n";
  common.emit(json{{"threshold", res.threshold},
                   {"lbt_floor", res.lbt_floor},
                   {"inv_scale", res.inv_scale}},
              human.str());
  return 0;
}

int run_curves(const std::string& file, const std::string& a,
               const std::string& b, size_t grid_points,
               const std::string& out_path) {
  auto sit = domlab::parse_situation(slurp(file));
  auto oi = sit.option(a).prospect();
  auto oj = sit.option(b).prospect();
  auto cert = domlab::dominates(oi, oj, sit.background);
  double lo = cert.scan_lo, hi = cert.scan_hi;
  if (cert.decided_in_vacuum) {
    double m = sit.background.mode(), sf = sit.background.scale_factor();
    lo = m - 20 * sf;
    hi = m + 20 * sf;
  }
  std::ostringstream csv;
  csv << "x,ccdf_i,ccdf_j,gap\n";
  csv.precision(17);
  for (double x : domlab::num::linspace(lo, hi, grid_points)) {
    double ci = domlab::overall_ccdf(oi, sit.background, x);
    double cj = domlab::overall_ccdf(oj, sit.background, x);
    csv << x << "," << ci << "," << cj << ","
        << domlab::ccdf_gap(oi, oj, sit.background, x) << "\n";
  }
  deliver(csv.str(), out_path);
  return 0;
}

int run_cases(const std::string& data_path, const CommonOpts& common) {
  auto cases = domlab::case_suite();

  // cross-check names and expected verdicts against the shipped fixture
  int mismatches = 0;
  if (!data_path.empty()) {
    auto doc = json::parse(slurp(data_path));
    if (doc.at("cases").size() != cases.size())
      throw domlab::SchemaError("case fixture count mismatch");
    for (size_t k = 0; k < cases.size(); ++k) {
      const auto& f = doc.at("cases").at(k);
      if (f.at("number").get<int>() != cases[k].number ||
          f.at("name").get<std::string>() != cases[k].name)
        throw domlab::SchemaError("case fixture out of order at index " +
                                  std::to_string(k));
      const auto& comps = f.at("comparisons");
      for (size_t c = 0; c < cases[k].comparisons.size(); ++c)
        if (comps.at(c).at("expected").get<std::string>() !=
            cases[k].comparisons[c].expected)
          ++mismatches;
    }
  }

  std::ostringstream human;
  int matched = 0;
  json rows = json::array();
  for (const auto& c : cases) {
    if (c.match) ++matched;
    human << (c.match ? "  ok  " : " FAIL ") << c.number << ". " << c.name
          << "\n        expectational: " << c.expectational
          << "\n        dominance:     " << c.dominance << "\n";
    json comps = json::array();
    for (const auto& cmp : c.comparisons) {
      human << "        " << cmp.left << " vs " << cmp.right << ": computed "
            << cmp.computed << ", expected " << cmp.expected << "\n";
      comps.push_back({{"left", cmp.left},
                       {"right", cmp.right},
                       {"expected", cmp.expected},
                       {"computed", cmp.computed}});
    }
    rows.push_back({{"number", c.number},
                    {"name", c.name},
                    {"expectational", c.expectational},
                    {"dominance", c.dominance},
                    {"match", c.match},
                    {"comparisons", comps}});
  }
  human << matched << "/" << cases.size() << " cases match\n";
  if (mismatches)
    human << "WARNING: " << mismatches
          << " fixture rows disagree with the built-in expectations\n";
  common.emit(json{{"cases", rows},
                   {"matched", matched},
                   {"fixture_mismatches", mismatches}},
              human.str());
  return (matched == int(cases.size()) && mismatches == 0) ? 0 : 1;
}

int run_oracle(const std::string& file, const std::string& a,
               const std::string& b, long long samples, std::uint64_t seed,
               const CommonOpts& common) {
  auto sit = domlab::parse_situation(slurp(file));
  domlab::OracleConfig cfg;
  cfg.sample_count = samples;
  cfg.seed = seed;
  auto rep = domlab::verify_dominance(sit.option(a).prospect(),
                                      sit.option(b).prospect(), sit.background,
                                      cfg);
  std::ostringstream human;
  human << "analytic verdict: " << domlab::to_string(rep.analytic) << "\n"
        << "oracle status:    "
        << (rep.status == domlab::OracleStatus::Consistent ? "Consistent"
                                                           : "Refuted")
        << "\n";
  if (rep.witness_x) human << "witness x:        " << *rep.witness_x << "\n";
  if (rep.refuted_at) human << "refuted at x:     " << *rep.refuted_at << "\n";
  json ests = json::array();
  for (const auto& e : rep.estimates)
    ests.push_back({{"x", e.x},
                    {"ccdf_i", e.ccdf_i},
                    {"ccdf_j", e.ccdf_j},
                    {"gap", e.gap},
                    {"lo", e.lo},
                    {"hi", e.hi}});
  common.emit(
      json{{"analytic", domlab::to_string(rep.analytic)},
           {"status",
            rep.status == domlab::OracleStatus::Consistent ? "Consistent"
                                                           : "Refuted"},
           {"witness_x", rep.witness_x ? json(*rep.witness_x) : json(nullptr)},
           {"refuted_at",
            rep.refuted_at ? json(*rep.refuted_at) : json(nullptr)},
           {"seed", cfg.seed},
           {"samples", cfg.sample_count},
           {"estimates", ests}},
      human.str());
  return rep.status == domlab::OracleStatus::Consistent ? 0 : 1;
}

int run_reproduce(long long samples, const CommonOpts& common) {
  auto rows = domlab::reproduce_all(samples);
  std::ostringstream human;
  bool all = true;
  json jrows = json::array();
  for (const auto& r : rows) {
    all = all && r.pass;
    char line[512];
    std::snprintf(line, sizeof line, "%s  %2d  %-45s %s (expected %s) [%.2fs]\n",
                  r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                  r.detail.c_str(), r.expected.c_str(), r.seconds);
    human << line;
    jrows.push_back({{"id", r.id},
                     {"name", r.name},
                     {"detail", r.detail},
                     {"expected", r.expected},
                     {"pass", r.pass},
                     {"seconds", r.seconds}});
  }
  common.emit(json{{"rows", jrows}, {"all_pass", all}}, human.str());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic dominance under background uncertainty"};
  app.require_subcommand(1);

  std::string file, opt_a, opt_b, family_name, opponent = "N";
  std::string cases_data, curves_out;
  double tolerance = 1e-7, tangency_tol = 1e-12;
  size_t grid_points = 1000;
  double wager_p = 0.01, sure = 1.0, payoff = 0.0;
  int doubling_level = 0;
  long long samples = 10'000'000;
  std::uint64_t seed = 0;
  CommonOpts common;
  BackgroundOpts bg;

  auto* check = app.add_subcommand("check", "dominance verdict between two options");
  check->add_option("file", file, "situation file")->required();
  check->add_option("--a", opt_a, "first option name")->required();
  check->add_option("--b", opt_b, "second option name")->required();
  check->add_option("--grid-points", grid_points, "scan grid size");
  check->add_option("--tolerance", tangency_tol, "tangency tolerance");
  common.attach(check);

  auto* bounds = app.add_subcommand("bounds", "upper/lower bound report");
  bounds->add_option("file", file)->required();
  bounds->add_option("--a", opt_a)->required();
  bounds->add_option("--b", opt_b)->required();
  common.attach(bounds);

  auto* threshold =
      app.add_subcommand("threshold", "dominance threshold of a gamble family");
  threshold->add_option("file", file)->required();
  threshold->add_option("--family", family_name, "gamble-family option name")
      ->required();
  threshold->add_option("--opponent", opponent, "opponent option name");
  threshold->add_option("--tolerance", tolerance, "bisection tolerance on p");
  common.attach(threshold);

  auto* price = app.add_subcommand(
      "price", "minimum dominating price (wager or doubling game)");
  price->add_option("--p", wager_p, "prize probability (wager)");
  price->add_option("--doubling-level", doubling_level,
                    "truncation depth: price the doubling game instead");
  bg.attach(price);
  common.attach(price);

  auto* longshot =
      app.add_subcommand("longshot", "long-shot probability threshold");
  longshot->add_option("--sure", sure, "sure payoff to beat");
  longshot->add_option("--payoff", payoff, "long-shot payoff magnitude")
      ->required();
  bg.attach(longshot);
  common.attach(longshot);

  auto* curves = app.add_subcommand("curves", "CCDF/gap curves as CSV");
  curves->add_option("file", file)->required();
  curves->add_option("--a", opt_a)->required();
  curves->add_option("--b", opt_b)->required();
  curves->add_option("--grid-points", grid_points, "number of CSV rows");
  curves->add_option("--out", curves_out, "CSV output path");

  auto* cases = app.add_subcommand("cases", "verdict table for the case suite");
  cases->add_option("--data", cases_data, "case fixture file to cross-check");
  common.attach(cases);

  auto* oracle =
      app.add_subcommand("oracle", "Monte Carlo check of the analytic verdict");
  oracle->add_option("file", file)->required();
  oracle->add_option("--a", opt_a)->required();
  oracle->add_option("--b", opt_b)->required();
  oracle->add_option("--samples", samples, "sample count (>= 1e4)");
  oracle->add_option("--seed", seed, "PRNG seed");
  common.attach(oracle);

  auto* reproduce =
      app.add_subcommand("reproduce", "run the pinned reproduction suite");
  reproduce->add_option("--samples", samples, "oracle sample count");
  common.attach(reproduce);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return run_check(file, opt_a, opt_b, grid_points, tangency_tol, common);
    if (*bounds) return run_bounds(file, opt_a, opt_b, common);
    if (*threshold) return run_threshold(file, family_name, opponent, tolerance, common);
    if (*price) return run_price(wager_p, doubling_level, bg, common);
    if (*longshot) return run_longshot(sure, payoff, bg, common);
    if (*curves) return run_curves(file, opt_a, opt_b, grid_points, curves_out);
    if (*cases) return run_cases(cases_data, common);
    if (*oracle) return run_oracle(file, opt_a, opt_b, samples, seed, common);
    if (*reproduce) return run_reproduce(samples, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
