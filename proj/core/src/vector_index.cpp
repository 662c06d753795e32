#include "recipeval/vector_index.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

void write_f32(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  write_u32(out, bits);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

float read_f32(std::istream& in) {
  const std::uint32_t bits = read_u32(in);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void VectorIndex::add(std::string chunk_id, EmbeddingVector vector) {
  if (vector.values.size() != kEmbeddingDim)
    throw ValidationError("embedding has wrong dimension: " +
                          std::to_string(vector.values.size()));
  for (const auto& entry : entries_)
    if (entry.chunk_id == chunk_id)
      throw ValidationError("duplicate chunk id in index: " + chunk_id);
  entries_.push_back({std::move(chunk_id), std::move(vector)});
}

std::vector<SearchHit> VectorIndex::search(const EmbeddingVector& query, std::size_t k) const {
  if (entries_.empty()) throw EmptyIndex();
  if (k == 0) return {};

  std::vector<SearchHit> hits;
  hits.reserve(entries_.size());
  for (const auto& entry : entries_)
    hits.push_back({entry.chunk_id, cosine_similarity(query, entry.vector)});

  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.chunk_id < b.chunk_id;
  });
  hits.resize(std::min(k, hits.size()));
  return hits;
}

void VectorIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write index: " + path);
  write_u32(out, static_cast<std::uint32_t>(kEmbeddingDim));
  write_u64(out, entries_.size());
  for (const auto& entry : entries_) {
    write_u32(out, static_cast<std::uint32_t>(entry.chunk_id.size()));
    out.write(entry.chunk_id.data(), static_cast<std::streamsize>(entry.chunk_id.size()));
    for (float v : entry.vector.values) write_f32(out, v);
  }
  if (!out) throw ValidationError("short write: " + path);
}

VectorIndex VectorIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open index: " + path);
  const std::uint32_t dim = read_u32(in);
  if (dim != kEmbeddingDim)
    throw ValidationError("index dimension mismatch: " + std::to_string(dim));
  const std::uint64_t count = read_u64(in);
  VectorIndex index;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint32_t id_len = read_u32(in);
    std::string id(id_len, '\0');
    in.read(id.data(), id_len);
    EmbeddingVector v;
    v.values.resize(kEmbeddingDim);
    for (auto& f : v.values) f = read_f32(in);
    if (!in) throw ValidationError("truncated index file: " + path);
    index.entries_.push_back({std::move(id), std::move(v)});
  }
  return index;
}

VectorIndex VectorIndex::build(const std::vector<KnowledgeChunk>& chunks,
                               const Embedder& embedder) {
  VectorIndex index;
  for (const auto& chunk : chunks) index.add(chunk.chunk_id, embedder.embed(chunk.text));
  return index;
}

}  // namespace recipeval
