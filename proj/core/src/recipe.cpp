#include "recipeval/recipe.hpp"

#include <cctype>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

constexpr std::string_view kStartMarker = "<|startoftext|>";
constexpr std::string_view kIngredientsPrefix = "Ingredients: ";

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool iequals_prefix(std::string_view line, std::string_view prefix) {
  if (line.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(line[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return lines;
}

}  // namespace

Recipe make_recipe(std::string name, const std::vector<std::string>& ingredient_raws,
                   std::vector<std::string> steps, const UnitLexicon& units) {
  Recipe r;
  r.name = std::move(name);
  r.steps = std::move(steps);
  r.ingredients.reserve(ingredient_raws.size());
  for (const auto& raw : ingredient_raws) {
    try {
      r.ingredients.push_back(parse_ingredient(raw, units));
    } catch (const NoContentTokens&) {
      // Numeric-only junk rows exist in the dump; keep the raw string so the
      // source order is preserved, with no name tokens to match on.
      IngredientSpec spec;
      spec.raw = raw;
      r.ingredients.push_back(std::move(spec));
    }
  }
  return r;
}

std::string format_model_input(const Recipe& r) {
  std::string out;
  out += kStartMarker;
  out += r.name;
  out.push_back('\n');
  out += kIngredientsPrefix;
  for (std::size_t i = 0; i < r.ingredients.size(); ++i) {
    if (i) out += ", ";
    out += r.ingredients[i].raw;
  }
  return out;
}

ParsedRecipeText parse_recipe_text(std::string_view text) {
  ParsedRecipeText out;
  bool saw_name = false;
  for (std::string_view line : split_lines(text)) {
    std::string_view body = line;
    if (iequals_prefix(body, kStartMarker)) body.remove_prefix(kStartMarker.size());
    if (iequals_prefix(body, "Ingredients:")) {
      body.remove_prefix(std::string_view("Ingredients:").size());
      std::size_t pos = 0;
      while (pos <= body.size()) {
        const std::size_t comma = body.find(',', pos);
        const std::string item =
            trim(body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos));
        if (!item.empty()) out.ingredient_raws.push_back(item);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
      continue;
    }
    const std::string t = trim(body);
    if (t.empty()) continue;
    if (!saw_name) {
      out.name = t;
      saw_name = true;
    } else {
      out.steps.push_back(t);
    }
  }
  return out;
}

std::vector<std::string> split_generated_steps(std::string_view text) {
  std::vector<std::string> steps;
  std::string current;

  auto flush = [&] {
    std::string t = trim(current);
    current.clear();
    // strip list markers: "1.", "12)", "-", "*"
    std::size_t i = 0;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i > 0 && i < t.size() && (t[i] == '.' || t[i] == ')')) {
      t = trim(std::string_view(t).substr(i + 1));
    } else if (!t.empty() && (t[0] == '-' || t[0] == '*')) {
      t = trim(std::string_view(t).substr(1));
    }
    if (!t.empty()) steps.push_back(std::move(t));
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '\n') {
      flush();
      continue;
    }
    if (c == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      flush();
      continue;
    }
    current.push_back(c);
  }
  flush();
  return steps;
}

}  // namespace recipeval
