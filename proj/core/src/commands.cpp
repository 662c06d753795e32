#include "recipeval/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"
#include "recipeval/hash.hpp"
#include "recipeval/ngram_metrics.hpp"
#include "recipeval/parallel.hpp"

namespace recipeval {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create directory " + dir + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write: " + path);
  out << content;
}

void write_stats_files(const std::string& out_dir, const CorpusStats& stats) {
  nlohmann::json obj;
  obj["ingredient_counts"] = stats.ingredient_counts;
  obj["unique_ingredient_share_top"] = stats.unique_ingredient_share_top;
  nlohmann::json cdf = nlohmann::json::object();
  for (const auto& [budget, fraction] : stats.token_length_cdf)
    cdf[std::to_string(budget)] = fraction;
  obj["token_length_cdf"] = std::move(cdf);
  write_text_file(out_dir + "/stats.json", obj.dump(2) + "\n");

  // occurrence table sorted by count desc for plotting
  std::vector<std::pair<std::string, std::size_t>> ranked(stats.ingredient_counts.begin(),
                                                          stats.ingredient_counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string csv = "ingredient,count\n";
  for (const auto& [noun, count] : ranked) csv += noun + "," + std::to_string(count) + "\n";
  csv += "\nbudget,fraction_under\n";
  for (const auto& [budget, fraction] : stats.token_length_cdf)
    csv += std::to_string(budget) + "," + format_score(fraction) + "\n";
  write_text_file(out_dir + "/stats.csv", csv);
}

std::vector<Recipe> records_to_recipes(const std::vector<RecipeRecord>& records) {
  std::vector<Recipe> recipes;
  recipes.reserve(records.size());
  for (const auto& record : records) recipes.push_back(record.recipe);
  return recipes;
}

}  // namespace

IngestSummary cmd_ingest(const IngestOptions& options) {
  ensure_dir(options.out_dir);
  LoadResult loaded = load_raw_recipes(options.csv_path);

  std::vector<RecipeRecord> records;
  records.reserve(loaded.recipes.size());
  for (std::size_t i = 0; i < loaded.recipes.size(); ++i)
    records.push_back({std::to_string(i), std::move(loaded.recipes[i])});

  if (options.sample && *options.sample < records.size()) {
    seeded_shuffle(records, options.seed);
    records.resize(*options.sample);
  }
  if (records.size() < 10) throw TooFewRecipes(records.size());

  seeded_shuffle(records, options.seed);
  const auto sizes = split_sizes(records.size());

  const auto slice = [&](std::size_t begin, std::size_t count) {
    return std::vector<RecipeRecord>(records.begin() + static_cast<std::ptrdiff_t>(begin),
                                     records.begin() + static_cast<std::ptrdiff_t>(begin + count));
  };
  const auto train = slice(0, sizes[0]);
  const auto validation = slice(sizes[0], sizes[1]);
  const auto test = slice(sizes[0] + sizes[1], sizes[2]);
  const std::size_t eval_count = std::min(kEvalSubsetSize, test.size());
  const std::vector<RecipeRecord> eval_subset(test.begin(),
                                              test.begin() + static_cast<std::ptrdiff_t>(eval_count));

  write_recipe_records(options.out_dir + "/train.jsonl", train);
  write_recipe_records(options.out_dir + "/validation.jsonl", validation);
  write_recipe_records(options.out_dir + "/test.jsonl", test);
  write_recipe_records(options.out_dir + "/eval_subset.jsonl", eval_subset);

  const CorpusStats stats = compute_stats(records_to_recipes(records), options.budgets);
  write_stats_files(options.out_dir, stats);

  RunManifest manifest;
  manifest.command = "ingest";
  manifest.inputs["csv"] = options.csv_path;
  manifest.seed = options.seed;
  if (options.sample) manifest.inputs["sample"] = std::to_string(*options.sample);
  manifest.timestamp = utc_timestamp();
  write_manifest(options.out_dir + "/manifest.json", manifest);

  IngestSummary summary;
  summary.loaded = records.size();
  summary.malformed = loaded.malformed.size();
  summary.train = train.size();
  summary.validation = validation.size();
  summary.test = test.size();
  summary.eval_subset = eval_subset.size();
  return summary;
}

CorpusStats cmd_stats(const StatsOptions& options) {
  ensure_dir(options.out_dir);
  const auto records = read_recipe_records(options.in_path);
  const CorpusStats stats = compute_stats(records_to_recipes(records), options.budgets);
  write_stats_files(options.out_dir, stats);

  RunManifest manifest;
  manifest.command = "stats";
  manifest.inputs["recipes"] = options.in_path;
  manifest.timestamp = utc_timestamp();
  write_manifest(options.out_dir + "/manifest.json", manifest);
  return stats;
}

EvaluationReport cmd_evaluate(const EvaluateOptions& options) {
  ensure_dir(options.out_dir);

  const auto generated = read_generated_records(options.generated_path);
  const auto references = read_recipe_records(options.references_path);
  if (generated.empty()) throw EmptyInput("no generated records in " + options.generated_path);

  std::map<std::string, const RecipeRecord*> reference_by_id;
  for (const auto& record : references) reference_by_id[record.id] = &record;

  std::vector<std::string> generated_only;
  std::set<std::string> generated_ids;
  for (const auto& record : generated) {
    generated_ids.insert(record.id);
    if (!reference_by_id.count(record.id)) generated_only.push_back(record.id);
  }
  std::vector<std::string> reference_only;
  for (const auto& record : references)
    if (!generated_ids.count(record.id)) reference_only.push_back(record.id);
  if (!generated_only.empty() || !reference_only.empty())
    throw IdMismatch(std::move(generated_only), std::move(reference_only));

  std::map<std::string, const LogProbRecord*> trace_by_id;
  std::vector<LogProbRecord> traces;
  if (options.logprobs_path) {
    traces = read_logprob_records(*options.logprobs_path);
    for (const auto& trace : traces) trace_by_id[trace.id] = &trace;
  }

  const MetricConfig config =
      options.config_path ? MetricConfig::load(*options.config_path) : MetricConfig::builtin();

  struct PerRecipe {
    std::string id;
    std::map<int, double> bleu;
    RougeScore rouge;
    std::optional<double> perplexity;
    DomainScore domain;
    bool empty_generation = false;
  };

  const auto rows = parallel_map<PerRecipe>(
      generated.size(),
      [&](std::size_t i) {
        const GeneratedRecord& gen = generated[i];
        const Recipe& reference = reference_by_id.at(gen.id)->recipe;

        PerRecipe row;
        row.id = gen.id;

        std::string reference_text;
        for (const auto& step : reference.steps) {
          if (!reference_text.empty()) reference_text.push_back(' ');
          reference_text += step;
        }
        const TokenStream cand = tokenize(gen.text);
        const TokenStream ref = tokenize(reference_text);
        const auto steps = split_generated_steps(gen.text);

        if (cand.empty() || ref.empty() || steps.empty() || reference.ingredients.empty()) {
          // degenerate rows score zero rather than aborting a 500-recipe run
          row.empty_generation = true;
          for (int n = 1; n <= 4; ++n) row.bleu[n] = 0.0;
        } else {
          row.bleu = bleu(cand, ref, 4);
          row.rouge = rouge(cand, ref);
          row.domain = score_domain(reference, steps, config);
        }
        if (const auto it = trace_by_id.find(gen.id);
            it != trace_by_id.end() && it->second->trace.token_count() > 0)
          row.perplexity = perplexity(it->second->trace);
        return row;
      },
      options.max_threads);

  EvaluationReport report;
  report.model_label = options.label;
  report.sample_count = rows.size();
  report.config_hash = to_hex(config.hash());
  report.timestamp = utc_timestamp();

  const double n = static_cast<double>(rows.size());
  for (int order = 1; order <= 4; ++order) report.bleu[order] = 0.0;
  double perplexity_sum = 0.0;
  std::size_t perplexity_count = 0;
  for (const auto& row : rows) {
    for (int order = 1; order <= 4; ++order)
      report.bleu[order] += row.bleu.count(order) ? row.bleu.at(order) / n : 0.0;
    report.rouge1 += row.rouge.rouge1_f / n;
    report.rouge2 += row.rouge.rouge2_f / n;
    report.rougeL += row.rouge.rougeL_f / n;
    report.domain.ingredient_coverage += row.domain.ingredient_coverage / n;
    report.domain.step_complexity += row.domain.step_complexity / n;
    report.domain.recipe_coherence += row.domain.recipe_coherence / n;
    report.domain.temp_time_spec += row.domain.temp_time_spec / n;
    if (row.perplexity) {
      perplexity_sum += *row.perplexity;
      ++perplexity_count;
    }
  }
  if (perplexity_count > 0)
    report.perplexity = perplexity_sum / static_cast<double>(perplexity_count);

  // per-recipe CSV
  std::string csv =
      "id,rouge1,rouge2,rougeL,bleu1,bleu2,bleu3,bleu4,perplexity,ingredient_coverage,"
      "step_complexity,recipe_coherence,temp_time_spec,temp_time_vacuous,empty_generation\n";
  for (const auto& row : rows) {
    csv += row.id + ',' + format_score(row.rouge.rouge1_f) + ',' +
           format_score(row.rouge.rouge2_f) + ',' + format_score(row.rouge.rougeL_f);
    for (int order = 1; order <= 4; ++order)
      csv += ',' + format_score(row.bleu.count(order) ? row.bleu.at(order) : 0.0);
    csv += ',' + (row.perplexity ? format_score(*row.perplexity) : std::string("-"));
    csv += ',' + format_score(row.domain.ingredient_coverage) + ',' +
           format_score(row.domain.step_complexity) + ',' +
           format_score(row.domain.recipe_coherence) + ',' +
           format_score(row.domain.temp_time_spec);
    csv += row.domain.temp_time_vacuous ? ",true" : ",false";
    csv += row.empty_generation ? ",true\n" : ",false\n";
  }
  write_text_file(options.out_dir + "/per_recipe.csv", csv);

  write_report_json(options.out_dir + "/report.json", report);

  const std::vector<EvaluationReport> one = {report};
  std::string tables = render_table_text(traditional_table(one));
  tables += "\n";
  tables += render_table_text(domain_table(one));
  write_text_file(options.out_dir + "/tables.txt", tables);
  write_text_file(options.out_dir + "/tables.csv",
                  render_table_csv(traditional_table(one)) + "\n" +
                      render_table_csv(domain_table(one)));

  RunManifest manifest;
  manifest.command = "evaluate";
  manifest.inputs["generated"] = options.generated_path;
  manifest.inputs["references"] = options.references_path;
  if (options.logprobs_path) manifest.inputs["logprobs"] = *options.logprobs_path;
  if (options.config_path) manifest.inputs["config"] = *options.config_path;
  manifest.model = options.label;
  manifest.config_hash = report.config_hash;
  manifest.timestamp = report.timestamp;
  write_manifest(options.out_dir + "/manifest.json", manifest);
  return report;
}

SubstituteSummary cmd_substitute(const SubstituteOptions& options) {
  const auto records = read_recipe_records(options.in_path);
  SubstituteSummary summary;
  summary.records = records.size();

  if (const auto dir = fs::path(options.out_path).parent_path(); !dir.empty())
    ensure_dir(dir.string());

  RunManifest manifest;
  manifest.command = "substitute";
  manifest.inputs["recipes"] = options.in_path;
  manifest.inputs["db"] = options.db_path;
  manifest.timestamp = utc_timestamp();

  if (options.mode == "rag") {
    manifest.mode = "rag-substitution";
    const auto db = load_allergen_db(options.db_path);
    const auto chunks = chunk_db(db);
    const VectorIndex index = VectorIndex::build(chunks, default_embedder());

    std::vector<RecipeRecord> rewritten;
    rewritten.reserve(records.size());
    for (const auto& record : records) {
      RecordSubstitution sub = substitute_recipe_fields(record.recipe, db, index,
                                                        options.threshold, options.allergens);
      if (!sub.detail.applied.empty()) {
        ++summary.records_with_substitutions;
        for (const auto& applied : sub.detail.applied)
          summary.total_substitutions += applied.positions.size();
      }
      for (const auto& flag : sub.detail.flags)
        summary.flags.push_back(record.id + ": " + flag);
      rewritten.push_back({record.id, std::move(sub.recipe)});
    }
    write_recipe_records(options.out_path, rewritten);
  } else if (options.mode == "prompt") {
    manifest.mode = "prompt-substitution";
    manifest.endpoint = options.client.base_url;
    manifest.model = options.client.model;
    if (options.allergens.empty()) throw EmptyField("allergens");

    const GenerationConfig config = GenerationConfig::prompt_mode();
    nlohmann::json config_json = {{"max_new_tokens", config.max_new_tokens},
                                  {"temperature", config.temperature},
                                  {"top_p", config.top_p},
                                  {"do_sample", config.do_sample},
                                  {"no_repeat_ngram_size", config.no_repeat_ngram_size},
                                  {"repetition_penalty", config.repetition_penalty}};
    const std::string config_dump = config_json.dump();

    const auto results = parallel_map<GeneratedRecord>(
        records.size(),
        [&](std::size_t i) {
          const auto& record = records[i];
          std::vector<std::string> raws;
          for (const auto& ing : record.recipe.ingredients) raws.push_back(ing.raw);
          const PromptRequest request =
              build_substitution_prompt(record.recipe.name, raws, options.allergens);
          LlmClient client(options.client);
          GeneratedRecord out;
          out.id = record.id;
          out.text = client.generate(request, config);
          out.prompt_hash = to_hex(fnv1a64(request.rendered));
          out.config_json = config_dump;
          return out;
        },
        options.max_inflight);
    summary.records_with_substitutions = results.size();
    write_generated_records(options.out_path, results);
  } else {
    throw ValidationError("unknown substitute mode: " + options.mode);
  }

  const fs::path manifest_path = fs::path(options.out_path).parent_path() / "manifest.json";
  write_manifest(manifest_path.string(), manifest);
  return summary;
}

JudgeAggregate cmd_judge(const JudgeOptions& options) {
  ensure_dir(options.out_dir);
  auto records = read_generated_records(options.in_path);
  if (records.empty()) throw EmptyInput("no generated records in " + options.in_path);
  // fixed eval-subset convention: at most the first 500
  if (records.size() > kEvalSubsetSize) records.resize(kEvalSubsetSize);

  PromptRequest context;
  context.mode = options.allergens.empty() ? PromptMode::plain : PromptMode::allergen_prompt;
  context.allergens = options.allergens;

  const auto cards = parallel_map<JudgeScorecard>(
      records.size(),
      [&](std::size_t i) {
        JudgeClient judge(options.client);
        return judge.score(records[i].text, context);
      },
      options.max_inflight);

  std::string log;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    nlohmann::json obj;
    obj["id"] = records[i].id;
    for (std::size_t c = 0; c < kJudgeCategories.size(); ++c)
      obj[kJudgeCategories[c]] = cards[i].category(c);
    obj["parse_attempts"] = cards[i].parse_attempts;
    log += obj.dump() + "\n";
  }
  write_text_file(options.out_dir + "/scorecards.jsonl", log);

  JudgeAggregate agg = aggregate(cards);
  agg.judge_model = options.client.model;
  agg.prompt_hash = fnv1a64(build_judge_prompt("{recipe}", context));

  nlohmann::json agg_json;
  for (std::size_t c = 0; c < kJudgeCategories.size(); ++c)
    agg_json[kJudgeCategories[c]] = agg.means[c];
  agg_json["sample_count"] = agg.sample_count;
  agg_json["judge_model"] = agg.judge_model;
  agg_json["prompt_hash"] = to_hex(agg.prompt_hash);
  write_text_file(options.out_dir + "/aggregate.json", agg_json.dump(2) + "\n");

  write_text_file(options.out_dir + "/radar.csv", radar_csv(agg));
  write_text_file(options.out_dir + "/radar.svg", radar_svg({{agg.judge_model, agg}}));

  RunManifest manifest;
  manifest.command = "judge";
  manifest.inputs["generated"] = options.in_path;
  manifest.endpoint = options.client.base_url;
  manifest.model = options.client.model;
  manifest.timestamp = utc_timestamp();
  write_manifest(options.out_dir + "/manifest.json", manifest);
  return agg;
}

std::string cmd_report(const ReportOptions& options) {
  std::vector<EvaluationReport> reports;
  for (const auto& path : options.report_paths) reports.push_back(read_report_json(path));
  if (reports.empty()) throw EmptyInput("no reports given");

  std::string text = render_table_text(traditional_table(reports));
  text += "\n" + render_table_text(domain_table(reports));
  const TableSpec judges = judge_table(reports);
  if (!judges.rows.empty()) text += "\n" + render_table_text(judges);

  if (!options.out_dir.empty()) {
    ensure_dir(options.out_dir);
    write_text_file(options.out_dir + "/tables.txt", text);
    std::string csv = render_table_csv(traditional_table(reports));
    csv += "\n" + render_table_csv(domain_table(reports));
    if (!judges.rows.empty()) csv += "\n" + render_table_csv(judges);
    write_text_file(options.out_dir + "/tables.csv", csv);

    RunManifest manifest;
    manifest.command = "report";
    for (std::size_t i = 0; i < options.report_paths.size(); ++i)
      manifest.inputs["report" + std::to_string(i)] = options.report_paths[i];
    manifest.timestamp = utc_timestamp();
    write_manifest(options.out_dir + "/manifest.json", manifest);
  }
  return text;
}

}  // namespace recipeval
