#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recipeval/ingredient.hpp"

namespace recipeval {

// The universal unit of evaluation: a named dish, its ingredient list in
// source order, and ordered instruction steps.
struct Recipe {
  std::string name;
  std::vector<IngredientSpec> ingredients;
  std::vector<std::string> steps;
};

Recipe make_recipe(std::string name, const std::vector<std::string>& ingredient_raws,
                   std::vector<std::string> steps,
                   const UnitLexicon& units = UnitLexicon::builtin());

// The training/inference input block:
//   <|startoftext|>[name]\nIngredients: [raw1, raw2, ...]
// Byte-stable across runs.
std::string format_model_input(const Recipe& r);

// Best-effort inverse used when rewriting free recipe text: first line is the
// name (marker stripped), an "Ingredients:" line carries the comma-separated
// list, every other non-empty line is a step.
struct ParsedRecipeText {
  std::string name;
  std::vector<std::string> ingredient_raws;
  std::vector<std::string> steps;
};
ParsedRecipeText parse_recipe_text(std::string_view text);

// Splits generated free text into instruction steps: newline boundaries plus
// sentence breaks, leading list markers ("1.", "2)", "-") removed.
std::vector<std::string> split_generated_steps(std::string_view text);

}  // namespace recipeval
