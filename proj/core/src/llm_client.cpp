#include "recipeval/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

bool retryable_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status < 600);
}

std::string api_key(const ClientOptions& options) {
  if (const char* key = std::getenv(options.api_key_env.c_str()); key && *key) return key;
  if (const char* key = std::getenv("OPENAI_API_KEY"); key && *key) return key;
  return {};
}

}  // namespace

LlmClient::LlmClient(ClientOptions options) : options_(std::move(options)) {}

std::string LlmClient::post_completion(const std::string& prompt, double temperature, double top_p,
                                       int max_tokens, bool extended,
                                       const GenerationConfig* config) {
  nlohmann::json body;
  body["model"] = options_.model;
  body["max_tokens"] = max_tokens;
  body["temperature"] = temperature;
  body["top_p"] = top_p;
  if (config) {
    if (extended) {
      body["do_sample"] = config->do_sample;
      body["no_repeat_ngram_size"] = config->no_repeat_ngram_size;
      body["repetition_penalty"] = config->repetition_penalty;
    } else if (options_.log) {
      options_.log(
          "endpoint does not accept extended sampling fields; dropping "
          "do_sample/no_repeat_ngram_size/repetition_penalty");
    }
  }

  std::string path;
  if (options_.use_chat) {
    path = "/v1/chat/completions";
    body["messages"] = nlohmann::json::array({{{"role", "user"}, {"content", prompt}}});
  } else {
    path = "/v1/completions";
    body["prompt"] = prompt;
  }

  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);
  httplib::Headers headers;
  if (const std::string key = api_key(options_); !key.empty())
    headers.emplace("Authorization", "Bearer " + key);

  const std::string payload = body.dump();
  std::string last_error;
  last_attempts_ = 0;

  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    last_attempts_ = attempt;
    if (attempt > 1) {
      const int delay = options_.initial_backoff_ms << (attempt - 2);
      if (options_.log)
        options_.log("retry " + std::to_string(attempt - 1) + " after " + last_error + "; backoff " +
                     std::to_string(delay) + "ms");
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }

    const auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error (" + httplib::to_string(res.error()) + ")";
      continue;
    }
    if (res->status == 401 || res->status == 403) throw AuthFailure(res->status);
    if (retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw MalformedResponse("unexpected HTTP " + std::to_string(res->status));

    const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) throw MalformedResponse("body is not JSON");
    if (!parsed.contains("choices") || !parsed["choices"].is_array() || parsed["choices"].empty())
      throw MalformedResponse("no choices in response");
    const auto& choice = parsed["choices"][0];
    if (options_.use_chat) {
      if (!choice.contains("message") || !choice["message"].contains("content"))
        throw MalformedResponse("chat choice has no message content");
      return choice["message"]["content"].get<std::string>();
    }
    if (!choice.contains("text")) throw MalformedResponse("completion choice has no text");
    return choice["text"].get<std::string>();
  }
  throw EndpointUnreachable(options_.base_url + path + " after " +
                            std::to_string(options_.max_attempts) + " attempts: " + last_error);
}

std::string LlmClient::complete(const std::string& prompt, const GenerationConfig& config) {
  return post_completion(prompt, config.temperature, config.top_p, config.max_new_tokens,
                         options_.extended_params, &config);
}

std::string LlmClient::generate(const PromptRequest& request, const GenerationConfig& config) {
  return complete(request.rendered, config);
}

std::string LlmClient::complete_with(const std::string& prompt, double temperature,
                                     int max_tokens) {
  return post_completion(prompt, temperature, 1.0, max_tokens, false, nullptr);
}

}  // namespace recipeval
