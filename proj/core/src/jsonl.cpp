#include "recipeval/jsonl.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& path, std::size_t line_no) {
  json parsed = json::parse(line, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object())
    throw ValidationError(path + ":" + std::to_string(line_no) + ": not a JSON object");
  return parsed;
}

template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    fn(parse_line(line, path, line_no), line_no);
  }
}

}  // namespace

std::string recipe_record_line(const RecipeRecord& record) {
  json obj;
  obj["id"] = record.id;
  obj["name"] = record.recipe.name;
  json ingredients = json::array();
  for (const auto& ing : record.recipe.ingredients) ingredients.push_back(ing.raw);
  obj["ingredients"] = std::move(ingredients);
  obj["steps"] = record.recipe.steps;
  return obj.dump();
}

std::vector<RecipeRecord> read_recipe_records(const std::string& path) {
  std::vector<RecipeRecord> records;
  for_each_line(path, [&](const json& obj, std::size_t line_no) {
    RecipeRecord record;
    record.id = obj.contains("id") ? obj["id"].is_string() ? obj["id"].get<std::string>()
                                                           : obj["id"].dump()
                                   : std::to_string(line_no - 1);
    const std::string name = obj.value("name", std::string{});
    std::vector<std::string> ingredient_raws;
    if (obj.contains("ingredients"))
      for (const auto& ing : obj["ingredients"]) ingredient_raws.push_back(ing.get<std::string>());
    std::vector<std::string> steps;
    if (obj.contains("steps"))
      for (const auto& step : obj["steps"]) steps.push_back(step.get<std::string>());
    record.recipe = make_recipe(name, ingredient_raws, std::move(steps));
    records.push_back(std::move(record));
  });
  return records;
}

void write_recipe_records(const std::string& path, const std::vector<RecipeRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write: " + path);
  for (const auto& record : records) out << recipe_record_line(record) << '\n';
}

std::vector<GeneratedRecord> read_generated_records(const std::string& path) {
  std::vector<GeneratedRecord> records;
  for_each_line(path, [&](const json& obj, std::size_t line_no) {
    GeneratedRecord record;
    record.id = obj.contains("id") ? obj["id"].is_string() ? obj["id"].get<std::string>()
                                                           : obj["id"].dump()
                                   : std::to_string(line_no - 1);
    if (!obj.contains("text"))
      throw ValidationError(path + ":" + std::to_string(line_no) + ": missing text field");
    record.text = obj["text"].get<std::string>();
    record.prompt_hash = obj.value("prompt_hash", std::string{});
    if (obj.contains("config")) record.config_json = obj["config"].dump();
    records.push_back(std::move(record));
  });
  return records;
}

void write_generated_records(const std::string& path,
                             const std::vector<GeneratedRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write: " + path);
  for (const auto& record : records) {
    json obj;
    obj["id"] = record.id;
    obj["text"] = record.text;
    if (!record.prompt_hash.empty()) obj["prompt_hash"] = record.prompt_hash;
    if (!record.config_json.empty()) obj["config"] = json::parse(record.config_json);
    out << obj.dump() << '\n';
  }
}

std::vector<LogProbRecord> read_logprob_records(const std::string& path) {
  std::vector<LogProbRecord> records;
  for_each_line(path, [&](const json& obj, std::size_t line_no) {
    LogProbRecord record;
    record.id = obj.contains("id") ? obj["id"].is_string() ? obj["id"].get<std::string>()
                                                           : obj["id"].dump()
                                   : std::to_string(line_no - 1);
    if (!obj.contains("token_logprobs") || !obj["token_logprobs"].is_array())
      throw ValidationError(path + ":" + std::to_string(line_no) + ": missing token_logprobs");
    for (const auto& lp : obj["token_logprobs"]) {
      const double value = lp.get<double>();
      if (value > 0.0)
        throw ValidationError(path + ":" + std::to_string(line_no) +
                              ": log probability above zero");
      record.trace.token_logprobs.push_back(value);
    }
    records.push_back(std::move(record));
  });
  return records;
}

}  // namespace recipeval
