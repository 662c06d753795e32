#include <doctest.h>

#include <algorithm>
#include <cctype>
#include <random>

#include "recipeval/errors.hpp"
#include "recipeval/ingredient.hpp"

using namespace recipeval;

TEST_SUITE("ingredient") {

TEST_CASE("quantity and unit recognition") {
  const IngredientSpec spec = parse_ingredient("2 cups all-purpose flour");
  CHECK(spec.quantity == Rational{2, 1});
  CHECK(spec.unit == "cup");
  CHECK(spec.name_tokens == std::vector<std::string>{"all-purpose", "flour"});
  CHECK(spec.head_noun == "flour");
}

TEST_CASE("bare ingredient") {
  const IngredientSpec spec = parse_ingredient("salt");
  CHECK_FALSE(spec.quantity.has_value());
  CHECK_FALSE(spec.unit.has_value());
  CHECK(spec.name_tokens == std::vector<std::string>{"salt"});
  CHECK(spec.head_noun == "salt");
}

TEST_CASE("mixed fraction parses exactly") {
  const IngredientSpec spec = parse_ingredient("1 1/2 tbsp vanilla extract");
  CHECK(spec.quantity == Rational{3, 2});
  CHECK(spec.unit == "tbsp");
  CHECK(spec.head_noun == "extract");
}

TEST_CASE("decimals and plain fractions") {
  CHECK(parse_ingredient("1.5 cups milk").quantity == Rational{3, 2});
  CHECK(parse_ingredient("3/4 tsp baking soda").quantity == Rational{3, 4});
  CHECK(parse_ingredient("0.25 l water").quantity == Rational{1, 4});
}

TEST_CASE("unknown units fold into name tokens") {
  const IngredientSpec spec = parse_ingredient("2 pinches saffron");
  CHECK(spec.quantity == Rational{2, 1});
  CHECK_FALSE(spec.unit.has_value());
  CHECK(spec.name_tokens == std::vector<std::string>{"pinches", "saffron"});
}

TEST_CASE("unit-only ingredient keeps the unit word as its name") {
  const IngredientSpec spec = parse_ingredient("2 cups");
  CHECK_FALSE(spec.unit.has_value());
  CHECK(spec.name_tokens == std::vector<std::string>{"cups"});
}

TEST_CASE("parentheticals are stripped") {
  const IngredientSpec spec = parse_ingredient("1 cup butter (softened, about 2 sticks)");
  CHECK(spec.unit == "cup");
  CHECK(spec.name_tokens == std::vector<std::string>{"butter"});
}

TEST_CASE("no content tokens") {
  CHECK_THROWS_AS(parse_ingredient("123"), NoContentTokens);
  CHECK_THROWS_AS(parse_ingredient("1/2"), NoContentTokens);
  CHECK_THROWS_AS(parse_ingredient("---"), NoContentTokens);
}

TEST_CASE("head noun always appears in the raw string, case-insensitively") {
  std::mt19937 rng(7);
  const std::vector<std::string> raws = {
      "2 Cups All-Purpose FLOUR", "1 1/2 tbsp Vanilla Extract", "Salt",
      "3 large EGGS (room temperature)", "1 lb ground beef", "fresh basil leaves",
      "2 tablespoons OLIVE oil", "1/4 teaspoon cayenne Pepper"};
  for (const auto& raw : raws) {
    const IngredientSpec spec = parse_ingredient(raw);
    REQUIRE_FALSE(spec.head_noun.empty());
    CHECK(std::find(spec.name_tokens.begin(), spec.name_tokens.end(), spec.head_noun) !=
          spec.name_tokens.end());
    std::string lowered_raw(raw.size(), '\0');
    for (std::size_t i = 0; i < raw.size(); ++i)
      lowered_raw[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i])));
    CHECK(lowered_raw.find(spec.head_noun) != std::string::npos);
  }
  (void)rng;
}

TEST_CASE("shipped unit lexicon matches the builtin") {
  const UnitLexicon shipped = UnitLexicon::load(std::string(RECIPEVAL_DATA_DIR) + "/units.tsv");
  CHECK(shipped.serialize() == UnitLexicon::builtin().serialize());
}

TEST_CASE("abbreviations with trailing periods") {
  CHECK(parse_ingredient("2 tbsp. sugar").unit == "tbsp");
  CHECK(parse_ingredient("8 oz. cream cheese").unit == "oz");
}

}  // TEST_SUITE
