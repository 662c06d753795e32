#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recipeval/recipe.hpp"

namespace recipeval {

struct MalformedRow {
  std::size_t row_index = 0;  // 1-based data row ordinal (header excluded)
  std::string reason;
};

struct LoadResult {
  std::vector<Recipe> recipes;
  std::vector<MalformedRow> malformed;
};

// Parses one bracketed list-literal cell as stored in the RAW_recipes dump:
//   ['flour', 'salt']   ["it's hot", 'mix']
// Single- or double-quoted elements with backslash escapes; bare atoms are
// tolerated. Throws ValidationError on malformed cells.
std::vector<std::string> parse_list_literal(std::string_view cell);

// Streams the RAW_recipes CSV (RFC 4180 quoting, embedded newlines allowed).
// Rows that fail to parse are collected as MalformedRow, not fatal; a header
// without name/ingredients/steps throws MissingColumn.
LoadResult load_raw_recipes(const std::string& path);

struct CorpusSplit {
  std::vector<Recipe> train;
  std::vector<Recipe> validation;
  std::vector<Recipe> test;
  std::uint64_t seed = 0;

  // The fixed evaluation subset: first 500 test recipes (all of them when the
  // test split is smaller).
  std::span<const Recipe> eval_subset() const;
};

inline constexpr std::size_t kEvalSubsetSize = 500;

// Fisher-Yates under mt19937_64 with modulo reduction; the sequence is pinned
// by the standard, so identical seeds shuffle identically on every platform.
template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(items[i - 1], items[j]);
  }
}

// Deterministic seeded shuffle, then an 80/10/10 partition with
// largest-remainder rounding. Throws TooFewRecipes below 10.
CorpusSplit split_corpus(std::vector<Recipe> recipes, std::uint64_t seed);

// Exposed for tests: the 80/10/10 largest-remainder split sizes.
std::array<std::size_t, 3> split_sizes(std::size_t total);

using LengthCounter = std::function<std::size_t(std::string_view)>;

struct CorpusStats {
  std::map<std::string, std::size_t> ingredient_counts;  // head noun -> recipes containing it
  double unique_ingredient_share_top = 0.0;  // share of unique ingredients covering 90% of mentions
  std::map<std::size_t, double> token_length_cdf;  // budget -> fraction of recipes under budget
};

// Ingredient occurrence counts keyed by head noun (one count per recipe) and
// the token-length CDF of joined ingredients + steps, measured by `counter`
// (defaults to the word tokenizer; a subword counter can be injected).
CorpusStats compute_stats(const std::vector<Recipe>& recipes, std::vector<std::size_t> budgets,
                          const LengthCounter& counter = word_token_count);

}  // namespace recipeval
