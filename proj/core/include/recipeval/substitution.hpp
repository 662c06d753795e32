#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "recipeval/allergen_db.hpp"
#include "recipeval/recipe.hpp"
#include "recipeval/vector_index.hpp"

namespace recipeval {

inline constexpr double kDefaultSubstitutionThreshold = 0.55;

struct AppliedSubstitution {
  std::string allergen;
  std::string substitute;
  std::vector<std::size_t> positions;  // byte offsets in the original text
};

struct SubstitutionResult {
  std::string original;
  std::string rewritten;
  std::vector<AppliedSubstitution> applied;
  std::vector<std::string> kept;   // ingredient mentions left unchanged
  std::vector<std::string> flags;  // safety warnings and rejected retrievals
};

const Embedder& default_embedder();

// The retrieval-assisted substitution pass over free recipe text. Ingredient
// mentions come from the "Ingredients:" line when present; alias matches are
// rewritten directly and mentions without an exact alias match go through
// embed -> top-1 search -> head-noun gate. Replacements take the form
// "<substitute> (substitute for <allergen>)" and are applied consistently
// across the whole text. An empty active_allergens list activates every
// database entry. The index must have been built from chunk_db(db) with the
// default window parameters.
SubstitutionResult substitute_recipe(std::string_view recipe_text,
                                     const std::vector<AllergenEntry>& db,
                                     const VectorIndex& index,
                                     double threshold = kDefaultSubstitutionThreshold,
                                     const std::vector<std::string>& active_allergens = {},
                                     const Embedder& embedder = default_embedder());

// Same pass with explicit chunks for callers that built the index under
// non-default window parameters; `chunks` must be the exact chunk list the
// index was built from.
SubstitutionResult substitute_recipe(std::string_view recipe_text,
                                     const std::vector<AllergenEntry>& db,
                                     const std::vector<KnowledgeChunk>& chunks,
                                     const VectorIndex& index, double threshold,
                                     const std::vector<std::string>& active_allergens = {},
                                     const Embedder& embedder = default_embedder());

// Field-wise variant for structured records: each ingredient raw is treated
// as one mention, and the decisions are replayed over the name and steps so
// every occurrence is rewritten consistently.
struct RecordSubstitution {
  Recipe recipe;
  SubstitutionResult detail;  // original/rewritten hold the composed text
};
RecordSubstitution substitute_recipe_fields(const Recipe& recipe,
                                            const std::vector<AllergenEntry>& db,
                                            const VectorIndex& index,
                                            double threshold = kDefaultSubstitutionThreshold,
                                            const std::vector<std::string>& active_allergens = {},
                                            const Embedder& embedder = default_embedder());

// Alias occurrences in `text` that sit outside replacement units, i.e.
// outside "<substitute> (substitute for <allergen>)" snippets and known-safe
// substitute phrases. Empty result means the text is clean for the given
// allergens. Used by substitute_recipe for its own post-check.
std::vector<std::string> find_unsafe_mentions(std::string_view text,
                                              const std::vector<AllergenEntry>& db,
                                              const std::vector<std::string>& active_allergens = {});

}  // namespace recipeval
