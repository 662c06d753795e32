#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "recipeval/domain_metrics.hpp"
#include "recipeval/judge.hpp"

namespace recipeval {

inline constexpr const char* kToolVersion = "0.1.0";

// Corpus-level averages for one model run.
struct EvaluationReport {
  std::string model_label;
  std::map<int, double> bleu;  // n -> mean cumulative BLEU-n
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  std::optional<double> perplexity;
  DomainScore domain;  // mean values; temp_time_vacuous unused here
  std::optional<JudgeAggregate> judge;
  std::size_t sample_count = 0;
  std::string config_hash;  // hex fingerprint of the metric config used
  std::string timestamp;    // ISO-8601 UTC; excluded from byte-stability checks
};

void write_report_json(const std::string& path, const EvaluationReport& report);
EvaluationReport read_report_json(const std::string& path);

// Plain-text and CSV table rendering in the paper's column orders.
struct TableSpec {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table_text(const TableSpec& table);
std::string render_table_csv(const TableSpec& table);

// Model | ROUGE-1 | ROUGE-2 | ROUGE-L | BLEU-1..4 | Perplexity. BLEU-4 and
// Perplexity columns drop out when no row carries them (small-scale layout).
TableSpec traditional_table(const std::vector<EvaluationReport>& reports);

// Model | Ingredient Coverage | Step Complexity | Recipe Coherence |
// Temp. and Time Spec.
TableSpec domain_table(const std::vector<EvaluationReport>& reports);

// Model | Clarity | Completeness | Consistency | Practicality | Relevance |
// Allergen Safety.
TableSpec judge_table(const std::vector<EvaluationReport>& reports);

// Scores formatted the way the paper prints them: up to three decimals,
// trailing zeros trimmed, at least one decimal kept.
std::string format_score(double value);

// Six-axis radar data (category, value) in rubric order.
std::string radar_csv(const JudgeAggregate& aggregate);

// Minimal static SVG with one hexagonal polygon per labelled series.
std::string radar_svg(const std::vector<std::pair<std::string, JudgeAggregate>>& series);

// Enough to re-run the exact evaluation: inputs, seed, mode, endpoints.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> inputs;  // logical name -> path
  std::uint64_t seed = 0;
  std::string mode;
  std::string endpoint;
  std::string model;
  std::string config_hash;
  std::string tool_version = kToolVersion;
  std::string timestamp;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

std::string utc_timestamp();

}  // namespace recipeval
