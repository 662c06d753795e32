#include "recipeval/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "recipeval/errors.hpp"
#include "recipeval/parallel.hpp"

namespace recipeval {

namespace {

// Minimal RFC 4180 reader: quoted fields with "" escapes, newlines inside
// quotes, CRLF tolerated.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& row) {
    row.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      any = true;
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            field.push_back('"');
            in_.get();
          } else {
            in_quotes = false;
          }
        } else {
          field.push_back(static_cast<char>(c));
        }
        continue;
      }
      switch (c) {
        case '"':
          in_quotes = true;
          break;
        case ',':
          row.push_back(std::move(field));
          field.clear();
          break;
        case '\r':
          break;
        case '\n':
          row.push_back(std::move(field));
          return true;
        default:
          field.push_back(static_cast<char>(c));
      }
    }
    if (!any) return false;
    row.push_back(std::move(field));
    return true;
  }

 private:
  std::istream& in_;
};

std::size_t skip_ws(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

}  // namespace

std::vector<std::string> parse_list_literal(std::string_view cell) {
  std::vector<std::string> items;
  std::size_t i = skip_ws(cell, 0);
  if (i >= cell.size() || cell[i] != '[')
    throw ValidationError("list literal must start with '['");
  ++i;
  i = skip_ws(cell, i);
  if (i < cell.size() && cell[i] == ']') return items;

  while (true) {
    i = skip_ws(cell, i);
    if (i >= cell.size()) throw ValidationError("unterminated list literal");
    std::string item;
    if (cell[i] == '\'' || cell[i] == '"') {
      const char quote = cell[i++];
      bool closed = false;
      while (i < cell.size()) {
        const char c = cell[i];
        if (c == '\\' && i + 1 < cell.size()) {
          item.push_back(cell[i + 1]);
          i += 2;
          continue;
        }
        if (c == quote) {
          closed = true;
          ++i;
          break;
        }
        item.push_back(c);
        ++i;
      }
      if (!closed) throw ValidationError("unterminated quoted element");
    } else {
      // bare atom: run until comma or closing bracket
      const std::size_t start = i;
      while (i < cell.size() && cell[i] != ',' && cell[i] != ']') ++i;
      std::string_view atom = cell.substr(start, i - start);
      while (!atom.empty() && std::isspace(static_cast<unsigned char>(atom.back())))
        atom.remove_suffix(1);
      item = std::string(atom);
    }
    items.push_back(std::move(item));
    i = skip_ws(cell, i);
    if (i >= cell.size()) throw ValidationError("unterminated list literal");
    if (cell[i] == ',') {
      ++i;
      continue;
    }
    if (cell[i] == ']') break;
    throw ValidationError("expected ',' or ']' in list literal");
  }
  return items;
}

LoadResult load_raw_recipes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open CSV: " + path);

  CsvReader reader(in);
  std::vector<std::string> header;
  if (!reader.next(header)) throw MissingColumn("name");

  auto find_column = [&](std::string_view want) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (ascii_lower(header[i]) == want) return i;
    }
    throw MissingColumn(std::string(want));
  };
  const std::size_t name_col = find_column("name");
  const std::size_t ingredients_col = find_column("ingredients");
  const std::size_t steps_col = find_column("steps");

  LoadResult result;
  std::vector<std::string> row;
  std::size_t row_index = 0;
  while (reader.next(row)) {
    ++row_index;
    if (row.size() <= std::max({name_col, ingredients_col, steps_col})) {
      result.malformed.push_back({row_index, "too few columns"});
      continue;
    }
    try {
      const auto ingredient_raws = parse_list_literal(row[ingredients_col]);
      auto steps = parse_list_literal(row[steps_col]);
      result.recipes.push_back(
          make_recipe(row[name_col], ingredient_raws, std::move(steps)));
    } catch (const ValidationError& e) {
      result.malformed.push_back({row_index, e.what()});
    }
  }
  return result;
}

std::array<std::size_t, 3> split_sizes(std::size_t total) {
  // Largest-remainder apportionment of 80/10/10 in tenths.
  const std::array<std::size_t, 3> weights = {8, 1, 1};
  std::array<std::size_t, 3> sizes{};
  std::array<std::size_t, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t scaled = total * weights[i];
    sizes[i] = scaled / 10;
    remainders[i] = scaled % 10;
    assigned += sizes[i];
  }
  std::size_t leftover = total - assigned;
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t i = 0; i < 3 && leftover > 0; ++i, --leftover) sizes[order[i]] += 1;
  return sizes;
}

CorpusSplit split_corpus(std::vector<Recipe> recipes, std::uint64_t seed) {
  if (recipes.size() < 10) throw TooFewRecipes(recipes.size());

  seeded_shuffle(recipes, seed);

  const auto sizes = split_sizes(recipes.size());
  CorpusSplit split;
  split.seed = seed;
  auto cursor = std::make_move_iterator(recipes.begin());
  split.train.assign(cursor, cursor + static_cast<std::ptrdiff_t>(sizes[0]));
  cursor += static_cast<std::ptrdiff_t>(sizes[0]);
  split.validation.assign(cursor, cursor + static_cast<std::ptrdiff_t>(sizes[1]));
  cursor += static_cast<std::ptrdiff_t>(sizes[1]);
  split.test.assign(cursor, cursor + static_cast<std::ptrdiff_t>(sizes[2]));
  return split;
}

std::span<const Recipe> CorpusSplit::eval_subset() const {
  return {test.data(), std::min(kEvalSubsetSize, test.size())};
}

CorpusStats compute_stats(const std::vector<Recipe>& recipes, std::vector<std::size_t> budgets,
                          const LengthCounter& counter) {
  CorpusStats stats;

  for (const Recipe& r : recipes) {
    std::set<std::string> distinct;
    for (const IngredientSpec& ing : r.ingredients) {
      if (!ing.head_noun.empty()) distinct.insert(ing.head_noun);
    }
    for (const auto& noun : distinct) ++stats.ingredient_counts[noun];
  }

  // Share of unique ingredients (most frequent first) needed to cover 90% of
  // all per-recipe mentions.
  std::size_t total_mentions = 0;
  for (const auto& [noun, count] : stats.ingredient_counts) total_mentions += count;
  if (total_mentions > 0) {
    std::vector<std::pair<std::string, std::size_t>> ranked(stats.ingredient_counts.begin(),
                                                            stats.ingredient_counts.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    const double target = 0.9 * static_cast<double>(total_mentions);
    std::size_t covered = 0;
    std::size_t used = 0;
    for (const auto& [noun, count] : ranked) {
      if (static_cast<double>(covered) >= target) break;
      covered += count;
      ++used;
    }
    stats.unique_ingredient_share_top =
        static_cast<double>(used) / static_cast<double>(ranked.size());
  }

  if (!recipes.empty() && !budgets.empty()) {
    std::sort(budgets.begin(), budgets.end());
    const auto lengths = parallel_map<std::size_t>(recipes.size(), [&](std::size_t i) {
      const Recipe& r = recipes[i];
      std::string joined;
      for (const auto& ing : r.ingredients) {
        if (!joined.empty()) joined.push_back(' ');
        joined += ing.raw;
      }
      for (const auto& step : r.steps) {
        if (!joined.empty()) joined.push_back(' ');
        joined += step;
      }
      return counter(joined);
    });
    for (std::size_t budget : budgets) {
      const auto under = std::count_if(lengths.begin(), lengths.end(),
                                       [&](std::size_t len) { return len < budget; });
      stats.token_length_cdf[budget] =
          static_cast<double>(under) / static_cast<double>(lengths.size());
    }
  }
  return stats;
}

}  // namespace recipeval
