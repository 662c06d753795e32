#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "recipeval/text.hpp"

namespace recipeval {

// One row of the substitution knowledge base. Substitutes are ranked; the
// first is the default replacement.
struct AllergenEntry {
  std::string allergen;
  std::vector<std::string> aliases;      // surface forms, lowercase, != allergen
  std::vector<std::string> substitutes;  // ranked, lowercase
  std::string notes;
};

// File format, one block per allergen:
//   [milk]
//   aliases=whole milk, skim milk, buttermilk
//   substitutes=oat milk, almond milk, soy milk, coconut milk, cashew milk
//   notes=Oat milk works best for baking, coconut milk for curry dishes.
// Throws SchemaViolation / DuplicateAllergen.
std::vector<AllergenEntry> parse_allergen_db(std::string_view content);
std::vector<AllergenEntry> load_allergen_db(const std::string& path);
std::string serialize_allergen_db(const std::vector<AllergenEntry>& entries);

// One paragraph per entry: "ALLERGEN: x. SUBSTITUTES: a, b, c. NOTES: ..."
std::string render_entry(const AllergenEntry& entry);

struct RenderedDb {
  std::string text;                                           // all paragraphs, blank-line separated
  TokenStream tokens;                                         // tokenized rendering
  std::vector<std::pair<std::size_t, std::size_t>> entry_token_spans;  // per entry [begin, end)
};
RenderedDb render_db(const std::vector<AllergenEntry>& entries);

struct KnowledgeChunk {
  std::string chunk_id;
  std::string text;
  std::size_t token_begin = 0;
  std::size_t token_end = 0;  // one past the last token
};

// Sliding-window chunking over the rendered token stream: every chunk holds
// at most `size` tokens and consecutive chunks overlap by exactly `overlap`
// tokens except the trailing one. Throws InvalidChunkParams when
// overlap >= size.
std::vector<KnowledgeChunk> chunk_db(const std::vector<AllergenEntry>& entries,
                                     std::size_t size = 1000, std::size_t overlap = 200);

}  // namespace recipeval
