#include "recipeval/embedding.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"
#include "recipeval/hash.hpp"

namespace recipeval {

bool EmbeddingVector::is_zero() const {
  for (float v : values)
    if (v != 0.0f) return false;
  return true;
}

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (float v : values) sum += static_cast<double>(v) * v;
  return std::sqrt(sum);
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  // Vectors are stored normalized, so the dot product is the cosine.
  double dot = 0.0;
  for (std::size_t i = 0; i < kEmbeddingDim; ++i)
    dot += static_cast<double>(a.values[i]) * b.values[i];
  return dot;
}

namespace {

// Lowercase, collapse non-alphanumerics to single spaces, trim.
std::string normalize_for_trigrams(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c >= 0x80) {
      if (pending_space && !out.empty()) out.push_back(' ');
      pending_space = false;
      out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

EmbeddingVector normalized(std::vector<double> accum) {
  double sum = 0.0;
  for (double v : accum) sum += v * v;
  EmbeddingVector out;
  out.values.assign(kEmbeddingDim, 0.0f);
  if (sum > 0.0) {
    const double inv = 1.0 / std::sqrt(sum);
    for (std::size_t i = 0; i < kEmbeddingDim; ++i)
      out.values[i] = static_cast<float>(accum[i] * inv);
  }
  return out;
}

}  // namespace

EmbeddingVector TrigramHashEmbedder::embed(std::string_view text) const {
  std::vector<double> counts(kEmbeddingDim, 0.0);
  const std::string norm = normalize_for_trigrams(text);
  if (norm.empty()) {
    EmbeddingVector out;
    out.values.assign(kEmbeddingDim, 0.0f);
    return out;
  }
  if (norm.size() < 3) {
    counts[fnv1a64(norm) % kEmbeddingDim] += 1.0;
  } else {
    for (std::size_t i = 0; i + 3 <= norm.size(); ++i)
      counts[fnv1a64(std::string_view(norm).substr(i, 3)) % kEmbeddingDim] += 1.0;
  }
  return normalized(std::move(counts));
}

EmbeddingVector embed(std::string_view text) {
  static const TrigramHashEmbedder embedder;
  return embedder.embed(text);
}

RemoteEmbedder::RemoteEmbedder(RemoteEmbedderOptions options) : options_(std::move(options)) {}

std::vector<EmbeddingVector> RemoteEmbedder::embed_batch(
    const std::vector<std::string>& texts) const {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_seconds);
  client.set_read_timeout(options_.timeout_seconds);

  httplib::Headers headers;
  if (const char* key = std::getenv(options_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  nlohmann::json body;
  body["model"] = options_.model;
  body["input"] = texts;

  const auto res = client.Post(options_.path, headers, body.dump(), "application/json");
  if (!res) throw EndpointUnreachable(options_.base_url + options_.path);
  if (res->status == 401 || res->status == 403) throw AuthFailure(res->status);
  if (res->status != 200)
    throw MalformedResponse("embedding endpoint returned HTTP " + std::to_string(res->status));

  const auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.contains("data") || !parsed["data"].is_array() ||
      parsed["data"].size() != texts.size())
    throw MalformedResponse("embedding response missing data array");

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& item : parsed["data"]) {
    if (!item.contains("embedding") || !item["embedding"].is_array())
      throw MalformedResponse("embedding item missing values");
    std::vector<double> accum(kEmbeddingDim, 0.0);
    std::size_t i = 0;
    for (const auto& v : item["embedding"]) {
      if (i >= kEmbeddingDim) break;  // wider models truncate to 512
      accum[i++] = v.get<double>();
    }
    out.push_back(normalized(std::move(accum)));
  }
  return out;
}

EmbeddingVector RemoteEmbedder::embed(std::string_view text) const {
  return embed_batch({std::string(text)}).front();
}

}  // namespace recipeval
