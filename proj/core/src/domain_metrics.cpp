#include "recipeval/domain_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "recipeval/errors.hpp"
#include "recipeval/hash.hpp"

namespace recipeval {

namespace {

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "the", "a",  "an",   "and",  "or",   "to",   "in",   "on",   "of",   "with", "for",
      "until", "then", "into", "at", "over", "under", "from", "it", "them", "each", "all",
      "about", "as", "by", "is", "are", "be", "this", "that", "your", "its"};
  return words;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view s, char sep = ',') {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(sep, pos);
    const std::string item =
        trim(s.substr(pos, next == std::string_view::npos ? s.size() - pos : next - pos));
    if (!item.empty()) out.push_back(item);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

bool is_number_token(std::string_view tok) {
  if (tok.empty()) return false;
  for (unsigned char c : tok)
    if (!std::isdigit(c)) return false;
  return true;
}

bool has_alpha_token(std::string_view tok) {
  for (unsigned char c : tok)
    if (std::isalpha(c) || c >= 0x80) return true;
  return false;
}

std::vector<std::string> filter_steps(const std::vector<std::string>& steps) {
  std::vector<std::string> out;
  for (const auto& s : steps)
    if (!trim(s).empty()) out.push_back(s);
  return out;
}

Range parse_range(std::string_view value) {
  const std::size_t colon = value.find(':');
  if (colon == std::string_view::npos) throw ValidationError("range must be lo:hi");
  return {std::stod(std::string(value.substr(0, colon))),
          std::stod(std::string(value.substr(colon + 1)))};
}

}  // namespace

const MetricConfig& MetricConfig::builtin() {
  static const MetricConfig config = [] {
    MetricConfig c;
    c.cooking_verbs = {
        "add",     "arrange",  "bake",    "baste",   "beat",     "blend",   "boil",
        "braise",  "broil",    "brush",   "caramelize", "chill", "chop",    "coat",
        "combine", "cool",     "core",    "cover",   "cream",    "crush",   "cut",
        "dice",    "dip",      "divide",  "drain",   "drizzle",  "flip",    "fold",
        "freeze",  "fry",      "garnish", "glaze",   "grate",    "grill",   "heat",
        "knead",   "layer",    "marinate", "mash",   "melt",     "mince",   "mix",
        "peel",    "place",    "poach",   "pour",    "preheat",  "press",   "puree",
        "reduce",  "refrigerate", "rinse", "roast",  "roll",     "saute",   "scramble",
        "sear",    "season",   "serve",   "shred",   "simmer",   "skim",    "slice",
        "soak",    "spread",   "sprinkle", "squeeze", "steam",   "stir",    "strain",
        "stuff",   "thaw",     "toast",   "top",     "toss",     "transfer", "trim",
        "turn",    "whip",     "whisk",   "zest"};
    c.artifact_nouns = {"batter",   "brine",    "broth",   "coating", "crumbs",  "crust",
                        "custard",  "dough",    "dressing", "filling", "frosting", "ganache",
                        "glaze",    "gravy",    "icing",   "marinade", "mixture", "paste",
                        "puree",    "reduction", "sauce",  "stock",   "syrup",   "topping"};
    c.equipment_nouns = {"blender", "board",  "bowl", "dish",  "griddle", "grill",
                         "oven",    "pan",    "plate", "pot",  "processor", "rack",
                         "sheet",   "skillet", "stove", "tray"};
    const std::vector<std::string> mixed = {"mixture", "batter", "dough"};
    for (const char* v : {"mix", "combine", "whisk", "stir", "beat", "blend", "cream", "fold"})
      c.producer_artifacts[v] = mixed;
    c.producer_artifacts["knead"] = {"dough"};
    c.ordering_rules = {{"preheat", "bake"}, {"preheat", "roast"}};
    c.heat_verbs = {"bake", "fry", "boil", "roast", "simmer", "grill"};
    c.method_map = {{"bake", "bake"},   {"roast", "bake"},  {"grill", "bake"},
                    {"preheat", "bake"}, {"broil", "bake"}, {"fry", "fry"},
                    {"saute", "fry"},   {"sear", "fry"},    {"boil", "boil"},
                    {"simmer", "boil"}, {"poach", "boil"},  {"steam", "boil"}};
    c.temp_ranges_f = {{"bake", {200, 550}}, {"fry", {300, 450}}, {"generic", {200, 550}}};
    c.temp_ranges_c = {{"bake", {90, 290}}, {"fry", {150, 232}}, {"generic", {90, 290}}};
    c.duration_ranges_minutes = {{"boil", {1, 480}}, {"generic", {1, 1440}}};
    return c;
  }();
  return config;
}

std::string MetricConfig::serialize() const {
  std::ostringstream out;
  auto join = [](const auto& container) {
    std::string s;
    for (const auto& item : container) {
      if (!s.empty()) s.push_back(',');
      s += item;
    }
    return s;
  };
  out << "coherence.order_weight=" << fmt_number(order_weight) << '\n';
  out << "coherence.ref_weight=" << fmt_number(ref_weight) << '\n';
  out << "coverage.min_token_len=" << coverage_min_token_len << '\n';
  for (const auto& [method, range] : duration_ranges_minutes)
    out << "duration." << method << '=' << fmt_number(range.lo) << ':' << fmt_number(range.hi)
        << '\n';
  out << "heat_verbs=" << join(heat_verbs) << '\n';
  out << "lexicon.artifacts=" << join(artifact_nouns) << '\n';
  out << "lexicon.equipment=" << join(equipment_nouns) << '\n';
  out << "lexicon.verbs=" << join(cooking_verbs) << '\n';
  for (const auto& [verb, method] : method_map) out << "method." << verb << '=' << method << '\n';
  for (const auto& [before, after] : ordering_rules)
    out << "ordering_rule=" << before << ':' << after << '\n';
  for (const auto& [verb, artifacts] : producer_artifacts)
    out << "producer." << verb << '=' << join(artifacts) << '\n';
  for (const auto& [method, range] : temp_ranges_c)
    out << "range.c." << method << '=' << fmt_number(range.lo) << ':' << fmt_number(range.hi)
        << '\n';
  for (const auto& [method, range] : temp_ranges_f)
    out << "range.f." << method << '=' << fmt_number(range.lo) << ':' << fmt_number(range.hi)
        << '\n';
  out << "step_complexity.length_cap=" << fmt_number(length_cap) << '\n';
  out << "step_complexity.length_weight=" << fmt_number(length_weight) << '\n';
  out << "step_complexity.param_weight=" << fmt_number(param_weight) << '\n';
  out << "step_complexity.verb_cap=" << fmt_number(verb_cap) << '\n';
  out << "step_complexity.verb_weight=" << fmt_number(verb_weight) << '\n';
  return out.str();
}

std::uint64_t MetricConfig::hash() const { return fnv1a64(serialize()); }

MetricConfig MetricConfig::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open metric config: " + path);

  std::string dir = ".";
  if (const std::size_t slash = path.find_last_of('/'); slash != std::string::npos)
    dir = path.substr(0, slash);

  auto read_lexicon_file = [&](const std::string& name) {
    std::ifstream lex(dir + "/" + name, std::ios::binary);
    if (!lex) throw ValidationError("cannot open lexicon file: " + dir + "/" + name);
    std::set<std::string> words;
    std::string line;
    while (std::getline(lex, line)) {
      const std::string w = trim(line);
      if (!w.empty() && w.front() != '#') words.insert(w);
    }
    return words;
  };

  MetricConfig c = builtin();
  c.cooking_verbs.clear();
  c.artifact_nouns.clear();
  c.equipment_nouns.clear();
  c.producer_artifacts.clear();
  c.ordering_rules.clear();
  c.heat_verbs.clear();
  c.method_map.clear();
  c.temp_ranges_f.clear();
  c.temp_ranges_c.clear();
  c.duration_ranges_minutes.clear();

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ValidationError("metric config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    try {
      if (key == "step_complexity.verb_weight") c.verb_weight = std::stod(value);
      else if (key == "step_complexity.length_weight") c.length_weight = std::stod(value);
      else if (key == "step_complexity.param_weight") c.param_weight = std::stod(value);
      else if (key == "step_complexity.verb_cap") c.verb_cap = std::stod(value);
      else if (key == "step_complexity.length_cap") c.length_cap = std::stod(value);
      else if (key == "coherence.ref_weight") c.ref_weight = std::stod(value);
      else if (key == "coherence.order_weight") c.order_weight = std::stod(value);
      else if (key == "coverage.min_token_len") c.coverage_min_token_len = std::stoul(value);
      else if (key == "heat_verbs") for (auto& v : split_list(value)) c.heat_verbs.insert(v);
      else if (key == "ordering_rule") {
        const auto parts = split_list(value, ':');
        if (parts.size() != 2) throw ValidationError("ordering_rule must be before:after");
        c.ordering_rules.emplace_back(parts[0], parts[1]);
      }
      else if (key == "lexicon.verbs") for (auto& v : split_list(value)) c.cooking_verbs.insert(v);
      else if (key == "lexicon.verbs.file") c.cooking_verbs = read_lexicon_file(value);
      else if (key == "lexicon.artifacts") for (auto& v : split_list(value)) c.artifact_nouns.insert(v);
      else if (key == "lexicon.artifacts.file") c.artifact_nouns = read_lexicon_file(value);
      else if (key == "lexicon.equipment") for (auto& v : split_list(value)) c.equipment_nouns.insert(v);
      else if (key == "lexicon.equipment.file") c.equipment_nouns = read_lexicon_file(value);
      else if (key.starts_with("producer.")) c.producer_artifacts[key.substr(9)] = split_list(value);
      else if (key.starts_with("method.")) c.method_map[key.substr(7)] = value;
      else if (key.starts_with("range.f.")) c.temp_ranges_f[key.substr(8)] = parse_range(value);
      else if (key.starts_with("range.c.")) c.temp_ranges_c[key.substr(8)] = parse_range(value);
      else if (key.starts_with("duration.")) c.duration_ranges_minutes[key.substr(9)] = parse_range(value);
      else throw ValidationError("unknown key");
    } catch (const std::exception& e) {
      throw ValidationError("metric config line " + std::to_string(line_no) + " (" + key +
                            "): " + e.what());
    }
  }
  return c;
}

std::optional<std::string> match_verb(std::string_view token,
                                      const std::set<std::string>& lexicon) {
  const std::string t(token);
  auto hit = [&](const std::string& candidate) -> bool {
    return !candidate.empty() && lexicon.count(candidate) > 0;
  };
  if (hit(t)) return t;
  if (t.size() > 3 && t.back() == 's' && t[t.size() - 2] != 's') {
    std::string base = t.substr(0, t.size() - 1);
    if (hit(base)) return base;
    if (t.size() > 4 && t.ends_with("es")) {
      base = t.substr(0, t.size() - 2);
      if (hit(base)) return base;
    }
  }
  auto try_suffix = [&](std::string_view suffix) -> std::optional<std::string> {
    if (t.size() <= suffix.size() + 1 || !t.ends_with(suffix)) return std::nullopt;
    std::string base = t.substr(0, t.size() - suffix.size());
    if (hit(base)) return base;
    if (base.size() >= 3 && base[base.size() - 1] == base[base.size() - 2]) {
      const std::string undoubled = base.substr(0, base.size() - 1);
      if (hit(undoubled)) return undoubled;
    }
    const std::string with_e = base + "e";
    if (hit(with_e)) return with_e;
    return std::nullopt;
  };
  if (auto m = try_suffix("ing")) return m;
  if (auto m = try_suffix("ed")) return m;
  return std::nullopt;
}

double ingredient_coverage(const Recipe& r, const std::vector<std::string>& generated_steps,
                           const MetricConfig& config) {
  if (r.ingredients.empty()) throw EmptyIngredientList();

  std::unordered_set<std::string> step_folds;
  for (const auto& step : generated_steps)
    for (const auto& tok : tokenize(step).tokens) step_folds.insert(singular_fold(tok));

  std::size_t present = 0;
  for (const IngredientSpec& ing : r.ingredients) {
    bool found = false;
    if (!ing.head_noun.empty() && step_folds.count(singular_fold(ing.head_noun))) found = true;
    if (!found) {
      for (const auto& tok : ing.name_tokens) {
        if (tok.size() >= config.coverage_min_token_len && step_folds.count(singular_fold(tok))) {
          found = true;
          break;
        }
      }
    }
    if (found) ++present;
  }
  return static_cast<double>(present) / static_cast<double>(r.ingredients.size());
}

std::vector<CookParam> extract_cook_params(const TokenStream& step_tokens,
                                           const MetricConfig& config) {
  std::vector<CookParam> params;
  const auto& toks = step_tokens.tokens;

  // Method context: the first verb with a range-table mapping. preheat/broil
  // carry a range even though they are not completeness triggers.
  std::set<std::string> method_verbs;
  for (const auto& [verb, m] : config.method_map) method_verbs.insert(verb);
  std::optional<std::string> method;
  for (const auto& tok : toks) {
    if (auto verb = match_verb(tok, method_verbs); verb) {
      method = verb;
      break;
    }
  }

  auto push = [&](CookParam::Kind kind, double value, CookParam::Unit unit) {
    params.push_back({kind, value, unit, method});
  };

  // Single-letter scales ("350 f", "175c") are only trusted for plausible oven
  // numbers; "2 c flour" is a quantity, not a temperature.
  auto accept_single_letter = [](double v) { return v >= 50.0; };

  auto parse_digits = [](std::string_view s) { return std::stod(std::string(s)); };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string& tok = toks[i];

    // fused forms: 350f, 350°f, 175c, 25min, 2hrs, 350°
    std::size_t d = 0;
    while (d < tok.size() && std::isdigit(static_cast<unsigned char>(tok[d]))) ++d;
    if (d > 0) {
      const double value = parse_digits(std::string_view(tok).substr(0, d));
      std::string_view suffix = std::string_view(tok).substr(d);
      bool degree = false;
      if (suffix.starts_with("\xC2\xB0")) {
        degree = true;
        suffix.remove_prefix(2);
      }
      if (suffix == "f" || suffix == "fahrenheit") {
        if (degree || suffix == "fahrenheit" || accept_single_letter(value))
          push(CookParam::Kind::temperature, value, CookParam::Unit::fahrenheit);
        continue;
      }
      if (suffix == "c" || suffix == "celsius") {
        if (degree || suffix == "celsius" || accept_single_letter(value))
          push(CookParam::Kind::temperature, value, CookParam::Unit::celsius);
        continue;
      }
      if (degree && suffix.empty()) {
        push(CookParam::Kind::temperature, value, CookParam::Unit::fahrenheit);
        continue;
      }
      if (suffix == "min" || suffix == "mins" || suffix == "minute" || suffix == "minutes") {
        push(CookParam::Kind::duration, value, CookParam::Unit::minutes);
        continue;
      }
      if (suffix == "hr" || suffix == "hrs" || suffix == "hour" || suffix == "hours") {
        push(CookParam::Kind::duration, value, CookParam::Unit::hours);
        continue;
      }
      if (!suffix.empty()) continue;  // other alnum suffix: not a cook param
    }

    if (!is_number_token(tok) || i + 1 >= toks.size()) continue;
    const double value = parse_digits(tok);
    const std::string& next = toks[i + 1];

    if (next == "f" || next == "fahrenheit") {
      if (next == "fahrenheit" || accept_single_letter(value))
        push(CookParam::Kind::temperature, value, CookParam::Unit::fahrenheit);
    } else if (next == "c" || next == "celsius") {
      if (next == "celsius" || accept_single_letter(value))
        push(CookParam::Kind::temperature, value, CookParam::Unit::celsius);
    } else if (next == "degree" || next == "degrees") {
      CookParam::Unit unit = CookParam::Unit::fahrenheit;
      if (i + 2 < toks.size()) {
        const std::string& scale = toks[i + 2];
        if (scale == "c" || scale == "celsius") unit = CookParam::Unit::celsius;
      }
      push(CookParam::Kind::temperature, value, unit);
    } else if (next == "minute" || next == "minutes" || next == "min" || next == "mins") {
      push(CookParam::Kind::duration, value, CookParam::Unit::minutes);
    } else if (next == "hour" || next == "hours" || next == "hr" || next == "hrs") {
      push(CookParam::Kind::duration, value, CookParam::Unit::hours);
    }
  }
  return params;
}

namespace {

bool param_in_range(const CookParam& param, const MetricConfig& config) {
  const std::string method =
      param.method_context && config.method_map.count(*param.method_context)
          ? config.method_map.at(*param.method_context)
          : "generic";
  if (param.kind == CookParam::Kind::temperature) {
    const auto& table = param.unit == CookParam::Unit::fahrenheit ? config.temp_ranges_f
                                                                  : config.temp_ranges_c;
    auto it = table.find(method);
    if (it == table.end()) it = table.find("generic");
    return it != table.end() && it->second.contains(param.value);
  }
  const double minutes =
      param.unit == CookParam::Unit::hours ? param.value * 60.0 : param.value;
  auto it = config.duration_ranges_minutes.find(method);
  if (it == config.duration_ranges_minutes.end())
    it = config.duration_ranges_minutes.find("generic");
  return it != config.duration_ranges_minutes.end() && it->second.contains(minutes);
}

bool has_measurement_param(const TokenStream& toks) {
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (is_number_token(toks.tokens[i]) && UnitLexicon::builtin().canonical(toks.tokens[i + 1]))
      return true;
  }
  return false;
}

}  // namespace

double step_complexity(const std::vector<std::string>& generated_steps,
                       const MetricConfig& config) {
  const auto steps = filter_steps(generated_steps);
  if (steps.empty()) throw EmptySteps();

  std::set<std::string> distinct_verbs;
  std::size_t total_tokens = 0;
  std::size_t steps_with_param = 0;
  for (const auto& step : steps) {
    const TokenStream toks = tokenize(step);
    total_tokens += toks.size();
    for (const auto& tok : toks.tokens)
      if (auto verb = match_verb(tok, config.cooking_verbs)) distinct_verbs.insert(*verb);
    if (!extract_cook_params(toks, config).empty() || has_measurement_param(toks))
      ++steps_with_param;
  }

  const double mean_tokens = static_cast<double>(total_tokens) / static_cast<double>(steps.size());
  const double verb_component =
      std::min(1.0, static_cast<double>(distinct_verbs.size()) / config.verb_cap);
  const double length_component = std::min(1.0, mean_tokens / config.length_cap);
  const double param_density =
      static_cast<double>(steps_with_param) / static_cast<double>(steps.size());
  return config.verb_weight * verb_component + config.length_weight * length_component +
         config.param_weight * param_density;
}

StepGraph build_step_graph(const std::vector<std::string>& generated_steps,
                           const MetricConfig& config) {
  const auto steps = filter_steps(generated_steps);
  if (steps.empty()) throw EmptySteps();

  StepGraph graph;
  graph.step_count = steps.size();

  // fold -> earliest step that introduced the entity
  std::unordered_map<std::string, std::size_t> introduced_at;

  for (std::size_t i = 0; i < steps.size(); ++i) {
    const TokenStream toks = tokenize(steps[i]);
    const auto& t = toks.tokens;

    // definite references: "the <run>" with the run's last token as entity
    for (std::size_t j = 0; j + 1 < t.size(); ++j) {
      if (t[j] != "the") continue;
      std::string entity;
      for (std::size_t k = j + 1; k < t.size() && k <= j + 3; ++k) {
        if (stopwords().count(t[k]) || !has_alpha_token(t[k])) break;
        entity = t[k];
      }
      if (entity.empty()) continue;
      const std::string fold = singular_fold(entity);
      const auto it = introduced_at.find(fold);
      if (it != introduced_at.end() && it->second < i) {
        graph.edges.push_back({it->second, i, fold});
      } else if (!config.equipment_nouns.count(fold)) {
        // ambient kitchen objects ("the oven" with no prior mention) need no
        // introduction and are exempt from the ratio
        graph.unresolved_refs.emplace_back(i, fold);
      }
    }

    // bare mentions introduce entities for later steps; producer verbs
    // introduce the artifacts they create
    for (const auto& tok : t) {
      if (!has_alpha_token(tok)) continue;
      introduced_at.emplace(singular_fold(tok), i);
      if (auto verb = match_verb(tok, config.cooking_verbs)) {
        const auto pit = config.producer_artifacts.find(*verb);
        if (pit != config.producer_artifacts.end())
          for (const auto& artifact : pit->second)
            introduced_at.emplace(singular_fold(artifact), i);
      }
    }
  }
  return graph;
}

double recipe_coherence(const std::vector<std::string>& generated_steps,
                        const MetricConfig& config) {
  const auto steps = filter_steps(generated_steps);
  if (steps.empty()) throw EmptySteps();

  const StepGraph graph = build_step_graph(steps, config);

  const std::size_t total_refs = graph.edges.size() + graph.unresolved_refs.size();
  const double ref_ratio =
      total_refs == 0
          ? 1.0
          : static_cast<double>(graph.edges.size()) / static_cast<double>(total_refs);

  // ordering rules: the "before" verb must appear in some step before the
  // first "after" step
  std::size_t applicable = 0;
  std::size_t satisfied = 0;
  for (const auto& [before, after] : config.ordering_rules) {
    std::optional<std::size_t> first_after;
    std::optional<std::size_t> first_before;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      for (const auto& tok : tokenize(steps[i]).tokens) {
        if (!first_after && match_verb(tok, {after})) first_after = i;
        if (!first_before && match_verb(tok, {before})) first_before = i;
      }
    }
    if (!first_after) continue;
    ++applicable;
    if (first_before && *first_before < *first_after) ++satisfied;
  }
  const double order_ratio =
      applicable == 0 ? 1.0 : static_cast<double>(satisfied) / static_cast<double>(applicable);

  return config.ref_weight * ref_ratio + config.order_weight * order_ratio;
}

TempTimeResult temp_time_spec(const std::vector<std::string>& generated_steps,
                              const MetricConfig& config) {
  const auto steps = filter_steps(generated_steps);
  if (steps.empty()) throw EmptySteps();

  std::size_t total_params = 0;
  std::size_t valid_params = 0;
  std::size_t heat_steps = 0;
  std::size_t covered_heat_steps = 0;

  for (const auto& step : steps) {
    const TokenStream toks = tokenize(step);
    const auto params = extract_cook_params(toks, config);
    total_params += params.size();
    for (const auto& p : params)
      if (param_in_range(p, config)) ++valid_params;

    bool is_heat_step = false;
    for (const auto& tok : toks.tokens) {
      if (match_verb(tok, config.heat_verbs)) {
        is_heat_step = true;
        break;
      }
    }
    if (is_heat_step) {
      ++heat_steps;
      if (!params.empty()) ++covered_heat_steps;
    }
  }

  const double validity =
      total_params == 0 ? 1.0
                        : static_cast<double>(valid_params) / static_cast<double>(total_params);
  const double completeness =
      heat_steps == 0 ? 1.0
                      : static_cast<double>(covered_heat_steps) / static_cast<double>(heat_steps);

  TempTimeResult result;
  result.vacuous = heat_steps == 0 && total_params == 0;
  result.score = validity * completeness;
  return result;
}

DomainScore score_domain(const Recipe& reference, const std::vector<std::string>& generated_steps,
                         const MetricConfig& config) {
  DomainScore score;
  score.ingredient_coverage = ingredient_coverage(reference, generated_steps, config);
  score.step_complexity = step_complexity(generated_steps, config);
  score.recipe_coherence = recipe_coherence(generated_steps, config);
  const TempTimeResult tt = temp_time_spec(generated_steps, config);
  score.temp_time_spec = tt.score;
  score.temp_time_vacuous = tt.vacuous;
  return score;
}

}  // namespace recipeval
