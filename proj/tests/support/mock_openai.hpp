#pragma once

#include <array>
#include <atomic>
#include <functional>
#include <string>
#include <thread>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace testsupport {

// In-process OpenAI-compatible endpoint on an ephemeral localhost port.
// The responder sees (prompt, zero-based call index) and returns
// (http status, body text). Plain text bodies are wrapped into the proper
// completion/chat JSON unless raw mode is requested.
class MockOpenAiServer {
 public:
  using Responder = std::function<std::pair<int, std::string>(const std::string&, int)>;

  MockOpenAiServer() {
    server_.Post("/v1/completions", [this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res, /*chat=*/false);
    });
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   handle(req, res, /*chat=*/true);
                 });
    server_.Post("/v1/embeddings", [this](const httplib::Request& req, httplib::Response& res) {
      handle_embeddings(req, res);
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~MockOpenAiServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int call_count() const { return calls_.load(); }
  void reset_calls() { calls_ = 0; }

  // body returned verbatim instead of wrapped in choices JSON
  void set_raw(bool raw) { raw_ = raw; }
  void set_responder(Responder responder) { responder_ = std::move(responder); }

  static Responder echo() {
    return [](const std::string& prompt, int) { return std::make_pair(200, prompt); };
  }
  static Responder fixed(std::string text) {
    return [text](const std::string&, int) { return std::make_pair(200, text); };
  }
  // n failures with `status`, then success with `text`
  static Responder fail_then_succeed(int n, int status, std::string text) {
    return [n, status, text](const std::string&, int call) {
      return call < n ? std::make_pair(status, std::string("transient failure"))
                      : std::make_pair(200, text);
    };
  }

 private:
  void handle(const httplib::Request& req, httplib::Response& res, bool chat) {
    const int call = calls_.fetch_add(1);
    std::string prompt;
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (!body.is_discarded()) {
      if (chat && body.contains("messages") && !body["messages"].empty())
        prompt = body["messages"][0].value("content", std::string{});
      else
        prompt = body.value("prompt", std::string{});
    }
    const auto [status, text] = responder_ ? responder_(prompt, call)
                                           : std::make_pair(200, std::string{});
    res.status = status;
    if (status != 200) {
      res.set_content(text, "text/plain");
      return;
    }
    if (raw_) {
      res.set_content(text, "application/json");
      return;
    }
    nlohmann::json out;
    if (chat) {
      out["choices"] = nlohmann::json::array(
          {{{"message", {{"role", "assistant"}, {"content", text}}}}});
    } else {
      out["choices"] = nlohmann::json::array({{{"text", text}}});
    }
    res.set_content(out.dump(), "application/json");
  }

  void handle_embeddings(const httplib::Request& req, httplib::Response& res) {
    calls_.fetch_add(1);
    const auto body = nlohmann::json::parse(req.body, nullptr, false);
    nlohmann::json data = nlohmann::json::array();
    if (!body.is_discarded() && body.contains("input")) {
      for (const auto& text : body["input"]) {
        // toy deterministic 8-dim embedding from character counts
        std::array<double, 8> v{};
        const std::string s = text.get<std::string>();
        for (unsigned char c : s) v[c % 8] += 1.0;
        data.push_back({{"embedding", v}});
      }
    }
    nlohmann::json out;
    out["data"] = std::move(data);
    res.set_content(out.dump(), "application/json");
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> calls_{0};
  bool raw_ = false;
  Responder responder_;
};

}  // namespace testsupport
