#pragma once

#include <string>
#include <vector>

#include "recipeval/ngram_metrics.hpp"
#include "recipeval/recipe.hpp"

namespace recipeval {

// Recipe JSON Lines record: {"id": ..., "ingredients": [...], "name": ...,
// "steps": [...]}; ids keep generated and reference files aligned.
struct RecipeRecord {
  std::string id;
  Recipe recipe;
};

std::vector<RecipeRecord> read_recipe_records(const std::string& path);
void write_recipe_records(const std::string& path, const std::vector<RecipeRecord>& records);
std::string recipe_record_line(const RecipeRecord& record);

// Generated-text record: {"id": ..., "text": ...} plus optional prompt_hash
// and config written by the generation commands.
struct GeneratedRecord {
  std::string id;
  std::string text;
  std::string prompt_hash;  // empty when absent
  std::string config_json;  // raw JSON of the generation config, empty when absent
};

std::vector<GeneratedRecord> read_generated_records(const std::string& path);
void write_generated_records(const std::string& path, const std::vector<GeneratedRecord>& records);

// {"id": ..., "token_logprobs": [...]}; every logprob must be <= 0.
struct LogProbRecord {
  std::string id;
  LogProbTrace trace;
};

std::vector<LogProbRecord> read_logprob_records(const std::string& path);

}  // namespace recipeval
