#include "recipeval/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <nlohmann/json.hpp>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

using nlohmann::json;

json report_to_json(const EvaluationReport& report) {
  json obj;
  obj["model_label"] = report.model_label;
  json bleu = json::object();
  for (const auto& [n, score] : report.bleu) bleu[std::to_string(n)] = score;
  obj["bleu"] = std::move(bleu);
  obj["rouge"] = {{"rouge1", report.rouge1}, {"rouge2", report.rouge2}, {"rougeL", report.rougeL}};
  if (report.perplexity) obj["perplexity"] = *report.perplexity;
  obj["domain"] = {{"ingredient_coverage", report.domain.ingredient_coverage},
                   {"step_complexity", report.domain.step_complexity},
                   {"recipe_coherence", report.domain.recipe_coherence},
                   {"temp_time_spec", report.domain.temp_time_spec}};
  if (report.judge) {
    json judge;
    for (std::size_t i = 0; i < kJudgeCategories.size(); ++i)
      judge[kJudgeCategories[i]] = report.judge->means[i];
    judge["sample_count"] = report.judge->sample_count;
    judge["judge_model"] = report.judge->judge_model;
    judge["prompt_hash"] = report.judge->prompt_hash;
    obj["judge"] = std::move(judge);
  }
  obj["sample_count"] = report.sample_count;
  obj["config_hash"] = report.config_hash;
  obj["timestamp"] = report.timestamp;
  return obj;
}

EvaluationReport report_from_json(const json& obj) {
  EvaluationReport report;
  report.model_label = obj.value("model_label", std::string{});
  if (obj.contains("bleu"))
    for (const auto& [key, value] : obj["bleu"].items())
      report.bleu[std::stoi(key)] = value.get<double>();
  if (obj.contains("rouge")) {
    report.rouge1 = obj["rouge"].value("rouge1", 0.0);
    report.rouge2 = obj["rouge"].value("rouge2", 0.0);
    report.rougeL = obj["rouge"].value("rougeL", 0.0);
  }
  if (obj.contains("perplexity")) report.perplexity = obj["perplexity"].get<double>();
  if (obj.contains("domain")) {
    const auto& d = obj["domain"];
    report.domain.ingredient_coverage = d.value("ingredient_coverage", 0.0);
    report.domain.step_complexity = d.value("step_complexity", 0.0);
    report.domain.recipe_coherence = d.value("recipe_coherence", 0.0);
    report.domain.temp_time_spec = d.value("temp_time_spec", 0.0);
  }
  if (obj.contains("judge")) {
    JudgeAggregate judge;
    const auto& j = obj["judge"];
    for (std::size_t i = 0; i < kJudgeCategories.size(); ++i)
      judge.means[i] = j.value(kJudgeCategories[i], 0.0);
    judge.sample_count = j.value("sample_count", std::size_t{0});
    judge.judge_model = j.value("judge_model", std::string{});
    judge.prompt_hash = j.value("prompt_hash", std::uint64_t{0});
    report.judge = std::move(judge);
  }
  report.sample_count = obj.value("sample_count", std::size_t{0});
  report.config_hash = obj.value("config_hash", std::string{});
  report.timestamp = obj.value("timestamp", std::string{});
  return report;
}

}  // namespace

void write_report_json(const std::string& path, const EvaluationReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write report: " + path);
  out << report_to_json(report).dump(2) << '\n';
}

EvaluationReport read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open report: " + path);
  json obj;
  try {
    in >> obj;
  } catch (const json::exception& e) {
    throw ValidationError("bad report JSON in " + path + ": " + e.what());
  }
  if (obj.is_array()) throw ValidationError("expected one report object in " + path);
  return report_from_json(obj);
}

std::string format_score(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", value);
  std::string s = buf;
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

std::string render_table_text(const TableSpec& table) {
  std::vector<std::size_t> widths(table.headers.size(), 0);
  for (std::size_t c = 0; c < table.headers.size(); ++c) widths[c] = table.headers[c].size();
  for (const auto& row : table.rows)
    for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());

  std::string out;
  auto emit_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < widths.size(); ++c) {
      const std::string& cell = c < cells.size() ? cells[c] : std::string{};
      out += cell;
      if (c + 1 < widths.size()) out += std::string(widths[c] - cell.size() + 2, ' ');
    }
    out += '\n';
  };
  emit_row(table.headers);
  std::size_t rule = 0;
  for (std::size_t c = 0; c < widths.size(); ++c) rule += widths[c] + (c + 1 < widths.size() ? 2 : 0);
  out += std::string(rule, '-') + '\n';
  for (const auto& row : table.rows) emit_row(row);
  return out;
}

std::string render_table_csv(const TableSpec& table) {
  auto escape = [](const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
      if (c == '"') quoted += "\"\"";
      else quoted.push_back(c);
    }
    quoted += '"';
    return quoted;
  };
  std::string out;
  for (std::size_t c = 0; c < table.headers.size(); ++c) {
    if (c) out.push_back(',');
    out += escape(table.headers[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out.push_back(',');
      out += escape(row[c]);
    }
    out += '\n';
  }
  return out;
}

TableSpec traditional_table(const std::vector<EvaluationReport>& reports) {
  bool any_bleu4 = false;
  bool any_perplexity = false;
  for (const auto& r : reports) {
    if (r.bleu.count(4)) any_bleu4 = true;
    if (r.perplexity) any_perplexity = true;
  }

  TableSpec table;
  table.headers = {"Model", "ROUGE-1", "ROUGE-2", "ROUGE-L", "BLEU-1", "BLEU-2", "BLEU-3"};
  if (any_bleu4) table.headers.push_back("BLEU-4");
  if (any_perplexity) table.headers.push_back("Perplexity");

  for (const auto& r : reports) {
    std::vector<std::string> row = {r.model_label, format_score(r.rouge1), format_score(r.rouge2),
                                    format_score(r.rougeL)};
    for (int n = 1; n <= 3; ++n)
      row.push_back(format_score(r.bleu.count(n) ? r.bleu.at(n) : 0.0));
    if (any_bleu4) row.push_back(format_score(r.bleu.count(4) ? r.bleu.at(4) : 0.0));
    if (any_perplexity) row.push_back(r.perplexity ? format_score(*r.perplexity) : "-");
    table.rows.push_back(std::move(row));
  }
  return table;
}

TableSpec domain_table(const std::vector<EvaluationReport>& reports) {
  TableSpec table;
  table.headers = {"Model", "Ingredient Coverage", "Step Complexity", "Recipe Coherence",
                   "Temp. and Time Spec."};
  for (const auto& r : reports) {
    table.rows.push_back({r.model_label, format_score(r.domain.ingredient_coverage),
                          format_score(r.domain.step_complexity),
                          format_score(r.domain.recipe_coherence),
                          format_score(r.domain.temp_time_spec)});
  }
  return table;
}

TableSpec judge_table(const std::vector<EvaluationReport>& reports) {
  TableSpec table;
  table.headers = {"Model",        "Clarity",   "Completeness", "Consistency",
                   "Practicality", "Relevance", "Allergen Safety"};
  for (const auto& r : reports) {
    if (!r.judge) continue;
    std::vector<std::string> row = {r.model_label};
    for (double mean : r.judge->means) row.push_back(format_score(mean));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string radar_csv(const JudgeAggregate& aggregate) {
  std::string out = "category,value\n";
  for (std::size_t i = 0; i < kJudgeCategories.size(); ++i) {
    out += kJudgeCategories[i];
    out.push_back(',');
    out += format_score(aggregate.means[i]);
    out.push_back('\n');
  }
  return out;
}

std::string radar_svg(const std::vector<std::pair<std::string, JudgeAggregate>>& series) {
  constexpr double kSize = 420.0;
  constexpr double kCx = kSize / 2;
  constexpr double kCy = kSize / 2;
  constexpr double kRadius = 150.0;
  constexpr double kPi = 3.14159265358979323846;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  auto axis_point = [&](std::size_t axis, double r) {
    const double angle = -kPi / 2 + 2 * kPi * static_cast<double>(axis) / 6.0;
    return std::pair<double, double>{kCx + r * std::cos(angle), kCy + r * std::sin(angle)};
  };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return std::string(buf);
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kSize) +
                    "\" height=\"" + fmt(kSize) + "\" viewBox=\"0 0 " + fmt(kSize) + " " +
                    fmt(kSize) + "\">\n";

  // grid rings at scores 1..5
  for (int ring = 1; ring <= 5; ++ring) {
    svg += "  <polygon points=\"";
    for (std::size_t axis = 0; axis < 6; ++axis) {
      const auto [x, y] = axis_point(axis, kRadius * ring / 5.0);
      svg += fmt(x) + "," + fmt(y) + " ";
    }
    svg += "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t axis = 0; axis < 6; ++axis) {
    const auto [x, y] = axis_point(axis, kRadius);
    svg += "  <line x1=\"" + fmt(kCx) + "\" y1=\"" + fmt(kCy) + "\" x2=\"" + fmt(x) + "\" y2=\"" +
           fmt(y) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    const auto [lx, ly] = axis_point(axis, kRadius + 18);
    svg += "  <text x=\"" + fmt(lx) + "\" y=\"" + fmt(ly) +
           "\" font-size=\"11\" text-anchor=\"middle\">" + kJudgeCategories[axis] + "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 4];
    svg += "  <polygon points=\"";
    for (std::size_t axis = 0; axis < 6; ++axis) {
      const double r = kRadius * series[s].second.means[axis] / 5.0;
      const auto [x, y] = axis_point(axis, r);
      svg += fmt(x) + "," + fmt(y) + " ";
    }
    svg += std::string("\" fill=\"") + color + "\" fill-opacity=\"0.15\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "  <text x=\"12\" y=\"" + fmt(16.0 + 14.0 * static_cast<double>(s)) +
           "\" font-size=\"12\" fill=\"" + color + "\">" + series[s].first + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  json obj;
  obj["command"] = manifest.command;
  obj["inputs"] = manifest.inputs;
  obj["seed"] = manifest.seed;
  obj["mode"] = manifest.mode;
  obj["endpoint"] = manifest.endpoint;
  obj["model"] = manifest.model;
  obj["config_hash"] = manifest.config_hash;
  obj["tool_version"] = manifest.tool_version;
  obj["timestamp"] = manifest.timestamp;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write manifest: " + path);
  out << obj.dump(2) << '\n';
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace recipeval
