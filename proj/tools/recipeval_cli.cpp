#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recipeval/recipeval.hpp"

namespace {

using namespace recipeval;

std::string default_data_path(const char* file) {
  return std::string(RECIPEVAL_DATA_DIR) + "/" + file;
}

std::vector<std::string> split_commas_arg(const std::string& value) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const std::size_t comma = value.find(',', pos);
    const std::string item =
        value.substr(pos, comma == std::string::npos ? value.size() - pos : comma - pos);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"recipeval: recipe generation evaluation and allergen substitution"};
  app.require_subcommand(1);

  // ingest
  IngestOptions ingest;
  auto* cmd_ingest_app = app.add_subcommand("ingest", "Load the RAW_recipes CSV, split, and compute stats");
  cmd_ingest_app->add_option("--csv", ingest.csv_path, "RAW_recipes CSV path")->required();
  cmd_ingest_app->add_option("--out", ingest.out_dir, "output directory")->required();
  std::size_t sample_n = 0;
  cmd_ingest_app->add_option("--sample", sample_n, "subsample N recipes before splitting");
  cmd_ingest_app->add_option("--seed", ingest.seed, "shuffle seed")->required();
  cmd_ingest_app->add_option("--budgets", ingest.budgets, "token budgets for the length CDF");

  // stats
  StatsOptions stats;
  auto* cmd_stats_app = app.add_subcommand("stats", "Corpus statistics over a recipe JSONL file");
  cmd_stats_app->add_option("--in", stats.in_path, "recipe JSONL")->required();
  cmd_stats_app->add_option("--out", stats.out_dir, "output directory")->required();
  cmd_stats_app->add_option("--budgets", stats.budgets, "token budgets for the length CDF");

  // evaluate
  EvaluateOptions evaluate;
  std::string logprobs_path, config_path;
  auto* cmd_eval_app = app.add_subcommand("evaluate", "Score generated recipes against references");
  cmd_eval_app->add_option("--generated", evaluate.generated_path, "generated JSONL")->required();
  cmd_eval_app->add_option("--references", evaluate.references_path, "reference recipe JSONL")->required();
  cmd_eval_app->add_option("--out", evaluate.out_dir, "output directory")->required();
  cmd_eval_app->add_option("--label", evaluate.label, "model label for tables");
  cmd_eval_app->add_option("--logprobs", logprobs_path, "token logprob JSONL for perplexity");
  cmd_eval_app->add_option("--config", config_path, "metric config file");
  cmd_eval_app->add_option("--max-threads", evaluate.max_threads, "worker cap");

  // substitute
  SubstituteOptions substitute;
  substitute.db_path = default_data_path("allergen_db.txt");
  std::string allergens_arg;
  auto* cmd_sub_app = app.add_subcommand("substitute", "Allergen substitution (rag or prompt mode)");
  cmd_sub_app->add_option("--in", substitute.in_path, "recipe JSONL")->required();
  cmd_sub_app->add_option("--out", substitute.out_path, "output JSONL")->required();
  cmd_sub_app->add_option("--db", substitute.db_path, "allergen database file");
  cmd_sub_app->add_option("--mode", substitute.mode, "rag | prompt")->check(CLI::IsMember({"rag", "prompt"}));
  cmd_sub_app->add_option("--allergens", allergens_arg, "comma-separated allergen list");
  cmd_sub_app->add_option("--threshold", substitute.threshold, "retrieval similarity threshold");
  cmd_sub_app->add_option("--endpoint", substitute.client.base_url, "completion endpoint (prompt mode)");
  cmd_sub_app->add_option("--model", substitute.client.model, "model name sent to the endpoint");
  cmd_sub_app->add_flag("--chat", substitute.client.use_chat, "use /v1/chat/completions");
  cmd_sub_app->add_option("--max-inflight", substitute.max_inflight, "concurrent request cap");

  // judge
  JudgeOptions judge;
  std::string judge_allergens_arg;
  auto* cmd_judge_app = app.add_subcommand("judge", "LLM-as-a-judge scoring of generated recipes");
  cmd_judge_app->add_option("--in", judge.in_path, "generated JSONL")->required();
  cmd_judge_app->add_option("--out", judge.out_dir, "output directory")->required();
  cmd_judge_app->add_option("--endpoint", judge.client.base_url, "judge endpoint")->required();
  cmd_judge_app->add_option("--model", judge.client.model, "judge model name");
  cmd_judge_app->add_flag("--chat", judge.client.use_chat, "use /v1/chat/completions");
  cmd_judge_app->add_option("--allergens", judge_allergens_arg, "allergens the recipes had to avoid");
  cmd_judge_app->add_option("--max-inflight", judge.max_inflight, "concurrent request cap");

  // report
  ReportOptions report;
  auto* cmd_report_app = app.add_subcommand("report", "Render stored evaluation reports as tables");
  cmd_report_app->add_option("--report", report.report_paths, "report JSON (repeatable)")->required();
  cmd_report_app->add_option("--out", report.out_dir, "output directory (optional)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_ingest_app->parsed()) {
      if (sample_n > 0) ingest.sample = sample_n;
      const IngestSummary summary = cmd_ingest(ingest);
      std::printf("loaded %zu recipes (%zu malformed rows)\n", summary.loaded, summary.malformed);
      std::printf("split %zu/%zu/%zu, eval subset %zu\n", summary.train, summary.validation,
                  summary.test, summary.eval_subset);
    } else if (cmd_stats_app->parsed()) {
      const CorpusStats result = cmd_stats(stats);
      std::printf("unique ingredients: %zu\n", result.ingredient_counts.size());
      for (const auto& [budget, fraction] : result.token_length_cdf)
        std::printf("under %zu tokens: %.4f\n", budget, fraction);
    } else if (cmd_eval_app->parsed()) {
      if (!logprobs_path.empty()) evaluate.logprobs_path = logprobs_path;
      if (!config_path.empty()) evaluate.config_path = config_path;
      const EvaluationReport rep = cmd_evaluate(evaluate);
      std::printf("%s", cmd_report({{evaluate.out_dir + "/report.json"}, ""}).c_str());
      std::printf("evaluated %zu recipes, config %s\n", rep.sample_count, rep.config_hash.c_str());
    } else if (cmd_sub_app->parsed()) {
      substitute.allergens = split_commas_arg(allergens_arg);
      const SubstituteSummary summary = cmd_substitute(substitute);
      std::printf("processed %zu records, %zu with substitutions (%zu total)\n", summary.records,
                  summary.records_with_substitutions, summary.total_substitutions);
      for (const auto& flag : summary.flags) std::fprintf(stderr, "flag: %s\n", flag.c_str());
    } else if (cmd_judge_app->parsed()) {
      judge.allergens = split_commas_arg(judge_allergens_arg);
      const JudgeAggregate agg = cmd_judge(judge);
      for (std::size_t i = 0; i < kJudgeCategories.size(); ++i)
        std::printf("%s: %.3f\n", kJudgeCategories[i], agg.means[i]);
      std::printf("samples: %zu\n", agg.sample_count);
    } else if (cmd_report_app->parsed()) {
      std::printf("%s", cmd_report(report).c_str());
    }
  } catch (const EndpointError& e) {
    std::fprintf(stderr, "endpoint error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
