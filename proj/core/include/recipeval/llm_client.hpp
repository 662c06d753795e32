#pragma once

#include <functional>
#include <string>

#include "recipeval/prompts.hpp"

namespace recipeval {

struct ClientOptions {
  std::string base_url;                            // e.g. http://127.0.0.1:8080
  std::string model = "default";
  std::string api_key_env = "RECIPEVAL_API_KEY";   // falls back to OPENAI_API_KEY
  bool use_chat = false;                           // /v1/chat/completions instead of /v1/completions
  bool extended_params = true;  // send repetition_penalty / no_repeat_ngram_size / do_sample
  int max_attempts = 3;
  int initial_backoff_ms = 200;                    // doubled per retry
  int timeout_seconds = 120;
  std::function<void(const std::string&)> log;     // retry events and dropped-field warnings
};

// Minimal OpenAI-compatible completion client. Transient failures (transport
// errors, 408/429/5xx) are retried with exponential backoff up to
// max_attempts; 401/403 raise AuthFailure immediately; bodies that are not
// the expected JSON shape raise MalformedResponse.
class LlmClient {
 public:
  explicit LlmClient(ClientOptions options);

  std::string complete(const std::string& prompt, const GenerationConfig& config);
  std::string generate(const PromptRequest& request, const GenerationConfig& config);

  // Raw escape hatch for non-generation calls (the judge pins temperature 0).
  std::string complete_with(const std::string& prompt, double temperature, int max_tokens);

  int last_attempt_count() const { return last_attempts_; }
  const ClientOptions& options() const { return options_; }

 private:
  std::string post_completion(const std::string& prompt, double temperature, double top_p,
                              int max_tokens, bool extended, const GenerationConfig* config);

  ClientOptions options_;
  int last_attempts_ = 0;
};

}  // namespace recipeval
