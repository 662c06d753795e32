#pragma once

#include <string>
#include <vector>

namespace recipeval {

// Sampling settings passed through to the completion endpoint. The two
// factory presets differ only in top_p: 0.95 for prompt-based substitution,
// 0.80 for post-generation RAG substitution.
struct GenerationConfig {
  int max_new_tokens = 256;
  double temperature = 0.75;
  double top_p = 0.95;
  bool do_sample = true;
  int no_repeat_ngram_size = 4;
  double repetition_penalty = 1.3;

  static GenerationConfig prompt_mode() { return {}; }
  static GenerationConfig rag_mode() {
    GenerationConfig cfg;
    cfg.top_p = 0.80;
    return cfg;
  }

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

enum class PromptMode { plain, allergen_prompt };

struct PromptRequest {
  PromptMode mode = PromptMode::plain;
  std::string name;
  std::vector<std::string> ingredients;
  std::vector<std::string> allergens;  // empty in plain mode
  std::string rendered;                // full prompt text
  std::vector<std::string> warnings;   // sanitization notes (stripped newlines etc.)
};

// The chef-persona substitution prompt with the three numbered instructions
// and the trailing template lines, placeholders filled by comma-joined lists.
// Throws EmptyField for any empty argument.
PromptRequest build_substitution_prompt(const std::string& name,
                                        const std::vector<std::string>& ingredients,
                                        const std::vector<std::string>& allergens);

// The plain generation input (same shape as the training input block).
// Newlines in the name are replaced and flagged. Throws EmptyField.
PromptRequest build_plain_prompt(const std::string& name,
                                 const std::vector<std::string>& ingredients);

}  // namespace recipeval
