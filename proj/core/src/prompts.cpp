#include "recipeval/prompts.hpp"

#include "recipeval/errors.hpp"
#include "recipeval/recipe.hpp"

namespace recipeval {

namespace {

constexpr const char* kSubstitutionPromptHeader =
    "You are an expert chef and recipe writer with a deep understanding of culinary techniques "
    "and food allergies. Your goal is to create a detailed and high quality recipe that uses the "
    "provided list of ingredients, while making substitutions for any allergens to ensure the "
    "recipe is safe for individuals with those allergies.\n"
    "Please follow these instructions:\n"
    "1. Create a Recipe: Write a full, detailed recipe based on the name and ingredients "
    "provided.\n"
    "2. Substitute Allergens: Some people are allergic to certain ingredients. You must avoid "
    "these allergens in the recipe and suggest substitutions from the list of safe ingredients. "
    "If the allergen is an essential part of the recipe, ensure the substitute maintains the "
    "flavor and texture as much as possible.\n"
    "3. Ensure Clarity and Detail: Provide precise instructions, including cooking methods, "
    "preparation steps, and any necessary tips. The recipe should be easy to follow for someone "
    "with basic cooking knowledge.\n";

std::string sanitize_field(const std::string& value, const std::string& field,
                           std::vector<std::string>& warnings) {
  std::string out = value;
  bool replaced = false;
  for (char& c : out) {
    if (c == '\n' || c == '\r') {
      c = ' ';
      replaced = true;
    }
  }
  if (replaced) warnings.push_back("newline stripped from " + field);
  return out;
}

std::string join_list(const std::vector<std::string>& items, const std::string& field,
                      std::vector<std::string>& warnings) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += sanitize_field(items[i], field, warnings);
  }
  return out;
}

}  // namespace

PromptRequest build_substitution_prompt(const std::string& name,
                                        const std::vector<std::string>& ingredients,
                                        const std::vector<std::string>& allergens) {
  if (name.empty()) throw EmptyField("name");
  if (ingredients.empty()) throw EmptyField("ingredients");
  if (allergens.empty()) throw EmptyField("allergens");

  PromptRequest req;
  req.mode = PromptMode::allergen_prompt;
  req.name = name;
  req.ingredients = ingredients;
  req.allergens = allergens;

  const std::string safe_name = sanitize_field(name, "name", req.warnings);
  const std::string ingredient_list = join_list(ingredients, "ingredients", req.warnings);
  const std::string allergen_list = join_list(allergens, "allergens", req.warnings);

  req.rendered = kSubstitutionPromptHeader;
  req.rendered += "Create a recipe for: " + safe_name + "\n";
  req.rendered += "Using these ingredients: " + ingredient_list + "\n";
  req.rendered += "Substitute these allergens for other ingredients: " + allergen_list + "\n";
  req.rendered += "Recipe:";
  return req;
}

PromptRequest build_plain_prompt(const std::string& name,
                                 const std::vector<std::string>& ingredients) {
  if (name.empty()) throw EmptyField("name");

  PromptRequest req;
  req.mode = PromptMode::plain;
  req.name = name;
  req.ingredients = ingredients;

  std::vector<std::string> sanitized;
  sanitized.reserve(ingredients.size());
  const std::string safe_name = sanitize_field(name, "name", req.warnings);
  for (const auto& ing : ingredients)
    sanitized.push_back(sanitize_field(ing, "ingredients", req.warnings));

  req.rendered = format_model_input(make_recipe(safe_name, sanitized, {}));
  return req;
}

}  // namespace recipeval
