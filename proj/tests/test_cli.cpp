#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "recipeval/jsonl.hpp"
#include "support/mock_openai.hpp"

using namespace recipeval;
using testsupport::MockOpenAiServer;

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string command = std::string(RECIPEVAL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("rv_cli_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  std::string str(const std::string& leaf) const { return (path / leaf).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ingest -> evaluate -> report round trip through the binary") {
  TempDir dir("pipeline");
  std::string csv = "name,ingredients,steps\n";
  for (int i = 0; i < 40; ++i)
    csv += "dish " + std::to_string(i) +
           ",\"['flour', 'milk']\",\"['mix flour and milk', 'bake at 350f for 20 minutes']\"\n";
  std::ofstream(dir.str("raw.csv")) << csv;

  REQUIRE(run_cli("ingest --csv " + dir.str("raw.csv") + " --out " + dir.str("corpus") +
                  " --seed 7") == 0);
  CHECK(fs::exists(dir.str("corpus/train.jsonl")));
  CHECK(fs::exists(dir.str("corpus/eval_subset.jsonl")));
  CHECK(fs::exists(dir.str("corpus/stats.json")));
  CHECK(fs::exists(dir.str("corpus/manifest.json")));

  // self-evaluation: generated == references
  const auto refs = read_recipe_records(dir.str("corpus/eval_subset.jsonl"));
  std::vector<GeneratedRecord> gens;
  for (const auto& record : refs) {
    std::string text;
    for (const auto& step : record.recipe.steps) {
      if (!text.empty()) text += "\n";
      text += step;
    }
    gens.push_back({record.id, text, "", ""});
  }
  write_generated_records(dir.str("gen.jsonl"), gens);

  REQUIRE(run_cli("evaluate --generated " + dir.str("gen.jsonl") + " --references " +
                  dir.str("corpus/eval_subset.jsonl") + " --out " + dir.str("eval") +
                  " --label identity") == 0);
  const std::string report = slurp(dir.str("eval/report.json"));
  CHECK(report.find("\"model_label\": \"identity\"") != std::string::npos);

  REQUIRE(run_cli("report --report " + dir.str("eval/report.json") + " --out " +
                  dir.str("tables")) == 0);
  const std::string tables = slurp(dir.str("tables/tables.txt"));
  CHECK(tables.find("ROUGE-1") != std::string::npos);
  CHECK(tables.find("Ingredient Coverage") != std::string::npos);
}

TEST_CASE("substitute and judge subcommands against the mock endpoint") {
  TempDir dir("endpoint");
  MockOpenAiServer server;
  server.set_responder(MockOpenAiServer::fixed(
      R"({"clarity":4,"completeness":4,"consistency":4,"practicality":4,"relevance":4,"allergen_safety":4})"));

  write_recipe_records(dir.str("in.jsonl"),
                       {{"0", make_recipe("waffles", {"flour", "milk", "eggs"},
                                          {"whisk the eggs and milk", "bake at 375f"})}});

  REQUIRE(run_cli("substitute --in " + dir.str("in.jsonl") + " --out " + dir.str("rag.jsonl") +
                  " --mode rag --allergens milk,eggs,fish") == 0);
  CHECK(slurp(dir.str("rag.jsonl")).find("(substitute for milk)") != std::string::npos);

  REQUIRE(run_cli("substitute --in " + dir.str("in.jsonl") + " --out " + dir.str("gen.jsonl") +
                  " --mode prompt --allergens milk,eggs --endpoint " + server.base_url()) == 0);
  CHECK(slurp(dir.str("gen.jsonl")).find("clarity") != std::string::npos);

  write_generated_records(dir.str("togo.jsonl"), {{"0", "a generated recipe", "", ""}});
  REQUIRE(run_cli("judge --in " + dir.str("togo.jsonl") + " --out " + dir.str("judged") +
                  " --endpoint " + server.base_url() + " --model mock") == 0);
  CHECK(fs::exists(dir.str("judged/radar.svg")));
  CHECK(fs::exists(dir.str("judged/aggregate.json")));
}

TEST_CASE("exit codes: 1 for validation errors, 2 for endpoint failures") {
  TempDir dir("exitcodes");
  CHECK(run_cli("evaluate --generated missing.jsonl --references missing.jsonl --out " +
                dir.str("out")) == 1);

  write_generated_records(dir.str("gen.jsonl"), {{"0", "text", "", ""}});
  CHECK(run_cli("judge --in " + dir.str("gen.jsonl") + " --out " + dir.str("judged") +
                " --endpoint http://127.0.0.1:9") == 2);
}

}  // TEST_SUITE
