#include "recipeval/judge.hpp"

#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"

namespace recipeval {

int JudgeScorecard::category(std::size_t index) const {
  switch (index) {
    case 0: return clarity;
    case 1: return completeness;
    case 2: return consistency;
    case 3: return practicality;
    case 4: return relevance;
    default: return allergen_safety;
  }
}

std::string build_judge_prompt(const std::string& recipe_text,
                               const PromptRequest& original_request) {
  if (recipe_text.empty()) throw EmptyRecipe();

  std::string prompt =
      "You are a culinary expert evaluating a generated recipe. Rate the recipe on each of the "
      "following categories using a Likert scale from 1 to 5, where 1 is the worst and 5 is the "
      "best:\n"
      "1. clarity: Instruction comprehensibility\n"
      "2. completeness: Coverage of necessary steps\n"
      "3. consistency: Logical flow and coherence\n"
      "4. practicality: Feasibility of execution\n"
      "5. relevance: Alignment with recipe goals\n"
      "6. allergen_safety: Checks if allergen is substituted correctly\n";

  if (!original_request.allergens.empty()) {
    prompt += "The recipe was required to avoid these allergens: ";
    for (std::size_t i = 0; i < original_request.allergens.size(); ++i) {
      if (i) prompt += ", ";
      prompt += original_request.allergens[i];
    }
    prompt +=
        ". For allergen_safety, check that each listed allergen is substituted correctly and "
        "does not appear in the recipe.\n";
  } else {
    prompt +=
        "No allergens were specified; for allergen_safety, check that the recipe does not "
        "introduce common allergens without warning.\n";
  }

  if (!original_request.name.empty()) prompt += "Requested recipe: " + original_request.name + "\n";
  prompt += "\nRecipe to evaluate:\n" + recipe_text + "\n\n";
  prompt +=
      "Respond with exactly one JSON object and nothing else, for example: "
      "{\"clarity\": 3, \"completeness\": 3, \"consistency\": 3, \"practicality\": 3, "
      "\"relevance\": 3, \"allergen_safety\": 3}";
  return prompt;
}

namespace {

// Balanced-brace extraction that respects JSON string literals.
std::vector<std::string> candidate_objects(const std::string& text) {
  std::vector<std::string> objects;
  for (std::size_t start = 0; start < text.size(); ++start) {
    if (text[start] != '{') continue;
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (c == '\\')
          ++i;
        else if (c == '"')
          in_string = false;
        continue;
      }
      if (c == '"') in_string = true;
      else if (c == '{') ++depth;
      else if (c == '}') {
        --depth;
        if (depth == 0) {
          objects.push_back(text.substr(start, i - start + 1));
          break;
        }
      }
    }
  }
  return objects;
}

}  // namespace

JudgeScorecard parse_scorecard(const std::string& response) {
  const auto objects = candidate_objects(response);
  if (objects.empty()) throw ScorecardParseError("no JSON object in response");

  std::string last_reason = "no candidate object had all six categories";
  for (const auto& object : objects) {
    const auto parsed = nlohmann::json::parse(object, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) continue;

    std::array<int, 6> values{};
    bool ok = true;
    for (std::size_t i = 0; i < kJudgeCategories.size(); ++i) {
      const auto it = parsed.find(kJudgeCategories[i]);
      if (it == parsed.end() || !it->is_number()) {
        ok = false;
        last_reason = std::string("missing or non-numeric key: ") + kJudgeCategories[i];
        break;
      }
      const double raw = it->get<double>();
      const int score = static_cast<int>(raw);
      if (raw != static_cast<double>(score) || score < 1 || score > 5) {
        ok = false;
        last_reason = std::string(kJudgeCategories[i]) + " out of 1..5 range";
        break;
      }
      values[i] = score;
    }
    if (!ok) continue;

    JudgeScorecard card;
    card.clarity = values[0];
    card.completeness = values[1];
    card.consistency = values[2];
    card.practicality = values[3];
    card.relevance = values[4];
    card.allergen_safety = values[5];
    card.raw_response = response;
    return card;
  }
  throw ScorecardParseError(last_reason);
}

JudgeAggregate aggregate(const std::vector<JudgeScorecard>& cards) {
  if (cards.empty()) throw EmptyInput("no scorecards to aggregate");
  std::array<long long, 6> sums{};
  for (const auto& card : cards)
    for (std::size_t i = 0; i < 6; ++i) sums[i] += card.category(i);
  JudgeAggregate out;
  out.sample_count = cards.size();
  for (std::size_t i = 0; i < 6; ++i)
    out.means[i] = static_cast<double>(sums[i]) / static_cast<double>(cards.size());
  return out;
}

JudgeClient::JudgeClient(ClientOptions options) : client_(std::move(options)) {}

JudgeScorecard JudgeClient::score(const std::string& recipe_text,
                                  const PromptRequest& original_request) {
  const std::string prompt = build_judge_prompt(recipe_text, original_request);
  constexpr int kMaxAttempts = 3;
  std::string last_response;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    std::string request = prompt;
    if (attempt > 1)
      request += "\nYour previous reply could not be parsed. Respond with exactly one JSON "
                 "object and nothing else.";
    last_response = client_.complete_with(request, /*temperature=*/0.0, /*max_tokens=*/256);
    try {
      JudgeScorecard card = parse_scorecard(last_response);
      card.parse_attempts = attempt;
      return card;
    } catch (const ScorecardParseError&) {
      // fall through to re-prompt
    }
  }
  throw UnparseableAfterRetries(kMaxAttempts);
}

}  // namespace recipeval
