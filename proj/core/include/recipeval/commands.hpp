#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recipeval/corpus.hpp"
#include "recipeval/jsonl.hpp"
#include "recipeval/llm_client.hpp"
#include "recipeval/report.hpp"
#include "recipeval/substitution.hpp"

namespace recipeval {

// The pipeline entry points behind the CLI subcommands. Every command writes
// a manifest.json next to its outputs with enough detail to re-run it.

struct IngestOptions {
  std::string csv_path;
  std::string out_dir;
  std::optional<std::size_t> sample;  // pre-split subsampling
  std::uint64_t seed = 0;
  std::vector<std::size_t> budgets = {256, 512};
};

struct IngestSummary {
  std::size_t loaded = 0;
  std::size_t malformed = 0;
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
  std::size_t eval_subset = 0;
};

IngestSummary cmd_ingest(const IngestOptions& options);

struct StatsOptions {
  std::string in_path;  // recipe JSONL
  std::string out_dir;
  std::vector<std::size_t> budgets = {256, 512};
};

CorpusStats cmd_stats(const StatsOptions& options);

struct EvaluateOptions {
  std::string generated_path;
  std::string references_path;
  std::string out_dir;
  std::string label = "model";
  std::optional<std::string> logprobs_path;
  std::optional<std::string> config_path;  // metric config; builtin when absent
  std::size_t max_threads = 0;
};

EvaluationReport cmd_evaluate(const EvaluateOptions& options);

struct SubstituteOptions {
  std::string in_path;  // recipe JSONL
  std::string out_path;
  std::string db_path;
  std::string mode = "rag";  // rag | prompt
  std::vector<std::string> allergens;
  double threshold = kDefaultSubstitutionThreshold;
  ClientOptions client;           // prompt mode
  std::size_t max_inflight = 4;   // prompt mode
};

struct SubstituteSummary {
  std::size_t records = 0;
  std::size_t records_with_substitutions = 0;
  std::size_t total_substitutions = 0;
  std::vector<std::string> flags;
};

SubstituteSummary cmd_substitute(const SubstituteOptions& options);

struct JudgeOptions {
  std::string in_path;  // generated JSONL
  std::string out_dir;
  ClientOptions client;
  std::vector<std::string> allergens;
  std::size_t max_inflight = 4;
};

// Scores at most the first 500 records (the fixed eval-subset convention).
JudgeAggregate cmd_judge(const JudgeOptions& options);

struct ReportOptions {
  std::vector<std::string> report_paths;
  std::string out_dir;  // empty: render only, write nothing
};

// Renders traditional/domain/judge tables for the given stored reports and
// returns the combined text.
std::string cmd_report(const ReportOptions& options);

}  // namespace recipeval
