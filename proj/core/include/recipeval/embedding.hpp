#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace recipeval {

inline constexpr std::size_t kEmbeddingDim = 512;

// L2-normalized 512-dim embedding; the all-zero vector stands for empty input.
struct EmbeddingVector {
  std::vector<float> values;  // always kEmbeddingDim long

  bool is_zero() const;
  double norm() const;
};

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
};

// Default embedder: hashed character-trigram term frequencies over the
// normalized text, folded into 512 buckets and L2-normalized. Deterministic,
// no model download.
class TrigramHashEmbedder : public Embedder {
 public:
  EmbeddingVector embed(std::string_view text) const override;
};

// Convenience wrapper over the default embedder.
EmbeddingVector embed(std::string_view text);

struct RemoteEmbedderOptions {
  std::string base_url;
  std::string path = "/v1/embeddings";
  std::string api_key_env = "RECIPEVAL_API_KEY";
  std::string model = "sentence-transformers/all-MiniLM-L6-v2";
  int timeout_seconds = 30;
};

// POST {"input": [text, ...]} -> {"data": [{"embedding": [...]}]}. Vectors of
// other widths are zero-padded or truncated to 512, then renormalized.
class RemoteEmbedder : public Embedder {
 public:
  explicit RemoteEmbedder(RemoteEmbedderOptions options);
  EmbeddingVector embed(std::string_view text) const override;
  std::vector<EmbeddingVector> embed_batch(const std::vector<std::string>& texts) const;

 private:
  RemoteEmbedderOptions options_;
};

}  // namespace recipeval
