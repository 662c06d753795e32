#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "recipeval/recipe.hpp"

namespace recipeval {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

// Everything the four recipe metrics are allowed to tune: component weights,
// saturation caps, the temperature/duration validity table and the lexicons.
// The shipped data/metric_config.cfg mirrors builtin(); its hash is recorded
// in every evaluation report.
struct MetricConfig {
  // step complexity: verb_w*min(1, verbs/verb_cap) + length_w*min(1, mean_len/length_cap)
  //                  + param_w*param_density
  double verb_weight = 0.4;
  double length_weight = 0.3;
  double param_weight = 0.3;
  double verb_cap = 8.0;
  double length_cap = 20.0;

  // coherence: ref_w*resolved_ratio + order_w*ordering_ratio
  double ref_weight = 0.7;
  double order_weight = 0.3;

  // ingredient coverage: name tokens shorter than this only match via the
  // head noun
  std::size_t coverage_min_token_len = 4;

  std::set<std::string> cooking_verbs;
  std::set<std::string> artifact_nouns;   // intermediate products: dough, batter, ...
  std::set<std::string> equipment_nouns;  // ambient kitchen objects: oven, pan, ...
  std::map<std::string, std::vector<std::string>> producer_artifacts;  // verb -> introduced
  std::vector<std::pair<std::string, std::string>> ordering_rules;     // before, after
  std::set<std::string> heat_verbs;
  std::map<std::string, std::string> method_map;  // verb -> range-table method

  std::map<std::string, Range> temp_ranges_f;  // method -> valid °F range
  std::map<std::string, Range> temp_ranges_c;  // method -> valid °C range
  std::map<std::string, Range> duration_ranges_minutes;

  static const MetricConfig& builtin();
  static MetricConfig load(const std::string& path);

  // Canonical key-sorted rendering; hash() fingerprints it.
  std::string serialize() const;
  std::uint64_t hash() const;

  friend bool operator==(const MetricConfig&, const MetricConfig&) = default;
};

// Resolves inflected forms ("baking", "stirred", "adds") against a base-form
// lexicon; returns the base form on a hit.
std::optional<std::string> match_verb(std::string_view token, const std::set<std::string>& lexicon);

struct DomainScore {
  double ingredient_coverage = 0.0;
  double step_complexity = 0.0;
  double recipe_coherence = 0.0;
  double temp_time_spec = 0.0;
  bool temp_time_vacuous = false;
};

// Fraction of input ingredients mentioned in the generated steps. A mention
// matches on the head noun, on any name token of length >= 4, or on a
// singular/plural fold of either. Throws EmptyIngredientList.
double ingredient_coverage(const Recipe& r, const std::vector<std::string>& generated_steps,
                           const MetricConfig& config = MetricConfig::builtin());

// Composite of distinct cooking operations, step detail and parameter
// density. Throws EmptySteps once empty strings are filtered out.
double step_complexity(const std::vector<std::string>& generated_steps,
                       const MetricConfig& config = MetricConfig::builtin());

struct StepGraph {
  struct Edge {
    std::size_t producer = 0;  // step that introduced the entity
    std::size_t consumer = 0;  // step referencing it; always > producer
    std::string entity;
  };
  std::size_t step_count = 0;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::string>> unresolved_refs;  // (step, entity)
};

StepGraph build_step_graph(const std::vector<std::string>& generated_steps,
                           const MetricConfig& config = MetricConfig::builtin());

// Resolved-reference ratio blended with ordering-rule satisfaction; ratios
// with no applicable cases count as 1. Throws EmptySteps.
double recipe_coherence(const std::vector<std::string>& generated_steps,
                        const MetricConfig& config = MetricConfig::builtin());

// A numeric cooking parameter pulled out of step text.
struct CookParam {
  enum class Kind { temperature, duration };
  enum class Unit { fahrenheit, celsius, minutes, hours };
  Kind kind = Kind::temperature;
  double value = 0.0;
  Unit unit = Unit::fahrenheit;
  std::optional<std::string> method_context;  // heat verb governing the step
};

std::vector<CookParam> extract_cook_params(const TokenStream& step_tokens,
                                           const MetricConfig& config = MetricConfig::builtin());

struct TempTimeResult {
  double score = 0.0;
  bool vacuous = false;  // no heat steps and no parameters at all
};

// validity_ratio * completeness over extracted parameters; recipes that need
// no heat score 1 with the vacuous flag set. Throws EmptySteps.
TempTimeResult temp_time_spec(const std::vector<std::string>& generated_steps,
                              const MetricConfig& config = MetricConfig::builtin());

// All four metrics in one pass.
DomainScore score_domain(const Recipe& reference, const std::vector<std::string>& generated_steps,
                         const MetricConfig& config = MetricConfig::builtin());

}  // namespace recipeval
