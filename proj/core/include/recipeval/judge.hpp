#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "recipeval/llm_client.hpp"
#include "recipeval/prompts.hpp"

namespace recipeval {

// The six rubric categories, in reporting order.
inline constexpr std::array<const char*, 6> kJudgeCategories = {
    "clarity", "completeness", "consistency", "practicality", "relevance", "allergen_safety"};

struct JudgeScorecard {
  int clarity = 0;
  int completeness = 0;
  int consistency = 0;
  int practicality = 0;
  int relevance = 0;
  int allergen_safety = 0;
  std::string raw_response;
  int parse_attempts = 1;

  int category(std::size_t index) const;
};

// Instructs the judge to reply with one JSON object keyed by the six
// categories, integer scores 1-5; the allergen list is included when present
// so allergen_safety is judgeable. Throws EmptyRecipe.
std::string build_judge_prompt(const std::string& recipe_text,
                               const PromptRequest& original_request);

// Pulls the first JSON object out of the response (prose around it is fine)
// and validates all six keys with integer values in 1..5. Single-shot; the
// retry loop lives in JudgeClient. Throws ScorecardParseError.
JudgeScorecard parse_scorecard(const std::string& response);

struct JudgeAggregate {
  std::array<double, 6> means{};  // kJudgeCategories order
  std::size_t sample_count = 0;
  std::string judge_model;
  std::uint64_t prompt_hash = 0;
};

// Per-category arithmetic means. Integer score sums make the result exactly
// permutation-invariant. Throws EmptyInput.
JudgeAggregate aggregate(const std::vector<JudgeScorecard>& cards);

// Judge calls run at temperature 0 with up to two re-prompts on parse
// failure (three attempts total per recipe).
class JudgeClient {
 public:
  explicit JudgeClient(ClientOptions options);

  JudgeScorecard score(const std::string& recipe_text, const PromptRequest& original_request);

 private:
  LlmClient client_;
};

}  // namespace recipeval
