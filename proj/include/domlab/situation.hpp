#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "domlab/background.hpp"
#include "domlab/errors.hpp"
#include "domlab/simple_prospect.hpp"
#include "domlab/thresholds.hpp"

namespace domlab {

using json = nlohmann::json;

// Background literal: {"family": "laplace", "location": 0, "scale": 166.9}.
// Laplace and Cauchy accept "ci95_halfwidth" instead of "scale"; mixtures
// nest component literals under "components" with "weights".
inline Background background_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw SchemaError("background: expected an object with a \"family\" field");
  std::string fam = j.at("family").get<std::string>();
  auto num = [&](const char* key, std::optional<double> fallback =
                                      std::nullopt) -> double {
    if (!j.contains(key)) {
      if (fallback) return *fallback;
      throw SchemaError("background." + fam + ": missing field \"" + key +
                        "\"");
    }
    if (!j.at(key).is_number())
      throw SchemaError("background." + fam + "." + key + ": expected number");
    return j.at(key).get<double>();
  };
  auto scale_of = [&](double (*from_ci)(double)) {
    if (j.contains("ci95_halfwidth")) {
      if (j.contains("scale"))
        throw SchemaError("background: give \"scale\" or \"ci95_halfwidth\","
                          " not both");
      return from_ci(num("ci95_halfwidth"));
    }
    return num("scale");
  };
  if (fam == "laplace")
    return make_laplace(num("location", 0.0), scale_of(laplace_scale_from_ci95));
  if (fam == "cauchy")
    return make_cauchy(num("location", 0.0), scale_of(cauchy_scale_from_ci95));
  if (fam == "gaussian") return make_gaussian(num("mean", 0.0), num("sd"));
  if (fam == "power_law")
    return Background(PowerLawTail{num("exponent"), num("cutoff"),
                                   num("center", 0.0)});
  if (fam == "mixture") {
    if (!j.contains("weights") || !j.contains("components"))
      throw SchemaError("background.mixture: needs \"weights\" and"
                        " \"components\"");
    FiniteMixture mix;
    for (const auto& w : j.at("weights")) mix.weights.push_back(w.get<double>());
    for (const auto& c : j.at("components"))
      mix.components.push_back(background_from_json(c));
    return Background(std::move(mix));
  }
  throw SchemaError("background.family: unknown family \"" + fam + "\"");
}

// One named option. Probabilities are exact rational strings or numbers; an
// outcome may instead carry "p": "FREE" (the solver's free parameter) and
// another "p": "SLACK" (absorbing the remaining mass), making the option a
// one-parameter gamble family rather than a fixed prospect.
struct OptionSpec {
  std::string name;
  std::vector<Outcome> fixed;
  std::optional<double> free_payoff;
  std::optional<double> slack_payoff;

  bool is_family() const { return free_payoff.has_value(); }

  SimpleProspect prospect() const {
    if (is_family())
      throw SchemaError("option \"" + name +
                        "\" has a FREE outcome; instantiate it via family()");
    return SimpleProspect(fixed);
  }

  GambleFamily family() const {
    if (!free_payoff || !slack_payoff)
      throw SchemaError("option \"" + name +
                        "\" is not a gamble family (needs FREE and SLACK"
                        " outcomes)");
    return GambleFamily(fixed, *free_payoff, *slack_payoff);
  }
};

struct SituationFile {
  Background background;
  std::vector<OptionSpec> options;
  json metadata;
  json raw;  // the validated source document; emit() returns it verbatim

  const OptionSpec& option(const std::string& name) const {
    for (const auto& o : options)
      if (o.name == name) return o;
    throw SchemaError("no option named \"" + name + "\"");
  }
};

namespace detail {

inline OptionSpec option_from_json(const json& j) {
  OptionSpec spec;
  if (!j.contains("name") || !j.at("name").is_string())
    throw SchemaError("option: missing \"name\"");
  spec.name = j.at("name").get<std::string>();
  if (!j.contains("outcomes") || !j.at("outcomes").is_array())
    throw SchemaError("option \"" + spec.name + "\": missing \"outcomes\"");
  Rational total = 0;
  for (const auto& oj : j.at("outcomes")) {
    if (!oj.contains("v") || !oj.at("v").is_number())
      throw SchemaError("option \"" + spec.name +
                        "\": outcome needs a numeric payoff \"v\"");
    double payoff = oj.at("v").get<double>();
    if (!oj.contains("p"))
      throw SchemaError("option \"" + spec.name +
                        "\": outcome needs a probability \"p\"");
    const auto& p = oj.at("p");
    if (p.is_string()) {
      std::string s = p.get<std::string>();
      if (s == "FREE") {
        if (spec.free_payoff)
          throw SchemaError("option \"" + spec.name +
                            "\": more than one FREE outcome");
        spec.free_payoff = payoff;
        continue;
      }
      if (s == "SLACK") {
        if (spec.slack_payoff)
          throw SchemaError("option \"" + spec.name +
                            "\": more than one SLACK outcome");
        spec.slack_payoff = payoff;
        continue;
      }
      try {
        Rational r = parse_rational(s);
        total += r;
        spec.fixed.push_back({payoff, r});
      } catch (const std::exception&) {
        throw SchemaError("option \"" + spec.name + "\": bad probability \"" +
                          s + "\"");
      }
      continue;
    }
    if (p.is_number()) {
      Rational r = rational_from_double(p.get<double>());
      total += r;
      spec.fixed.push_back({payoff, r});
      continue;
    }
    throw SchemaError("option \"" + spec.name +
                      "\": probability must be a number, rational string,"
                      " FREE, or SLACK");
  }
  if (spec.free_payoff.has_value() != spec.slack_payoff.has_value())
    throw SchemaError("option \"" + spec.name +
                      "\": FREE and SLACK outcomes must appear together");
  if (spec.is_family()) {
    if (total >= 1)
      throw ProbabilitySum("option \"" + spec.name +
                           "\": fixed probabilities leave no free mass");
  } else if (total != 1) {
    throw ProbabilitySum("option \"" + spec.name +
                         "\": probabilities sum to " + total.str() +
                         ", expected 1");
  }
  return spec;
}

}  // namespace detail

inline SituationFile parse_situation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("background") ||
      !doc.contains("options"))
    throw SchemaError("situation file needs \"background\" and \"options\"");
  SituationFile sit{background_from_json(doc.at("background")), {}, {}, doc};
  if (!doc.at("options").is_array() || doc.at("options").size() < 2)
    throw SchemaError("situation file needs at least two options");
  for (const auto& oj : doc.at("options"))
    sit.options.push_back(detail::option_from_json(oj));
  for (size_t a = 0; a < sit.options.size(); ++a)
    for (size_t b = a + 1; b < sit.options.size(); ++b)
      if (sit.options[a].name == sit.options[b].name)
        throw SchemaError("duplicate option name \"" + sit.options[a].name +
                          "\"");
  if (doc.contains("metadata")) sit.metadata = doc.at("metadata");
  return sit;
}

inline json emit_situation(const SituationFile& sit) { return sit.raw; }

}  // namespace domlab
