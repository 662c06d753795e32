#pragma once

#include <string>
#include <vector>

#include "recipeval/allergen_db.hpp"
#include "recipeval/embedding.hpp"

namespace recipeval {

struct SearchHit {
  std::string chunk_id;
  double similarity = 0.0;
};

// Flat exact-search store over (chunk_id, embedding) rows, cosine metric.
// The index holds tens of chunks here, so approximate search buys nothing.
class VectorIndex {
 public:
  void add(std::string chunk_id, EmbeddingVector vector);
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Exact top-k by descending cosine similarity, ties broken by ascending
  // chunk_id; length min(k, size()). Throws EmptyIndex.
  std::vector<SearchHit> search(const EmbeddingVector& query, std::size_t k) const;

  // Binary layout: u32 dim, u64 count, then per row u32 id length, id bytes,
  // dim little-endian f32 values.
  void save(const std::string& path) const;
  static VectorIndex load(const std::string& path);

  static VectorIndex build(const std::vector<KnowledgeChunk>& chunks, const Embedder& embedder);

 private:
  struct Entry {
    std::string chunk_id;
    EmbeddingVector vector;
  };
  std::vector<Entry> entries_;
};

}  // namespace recipeval
