#include "recipeval/ingredient.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "recipeval/errors.hpp"

namespace recipeval {

Rational Rational::reduce(long long n, long long d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  return g ? Rational{n / g, d / g} : Rational{n, d};
}

namespace {

constexpr std::string_view kBuiltinUnits =
    "cup\tcups\n"
    "tbsp\ttablespoon,tablespoons,tbs,tbsps\n"
    "tsp\tteaspoon,teaspoons,tsps\n"
    "g\tgram,grams,gr\n"
    "kg\tkilogram,kilograms\n"
    "oz\tounce,ounces\n"
    "lb\tlbs,pound,pounds\n"
    "ml\tmilliliter,milliliters,millilitre,millilitres\n"
    "l\tliter,liters,litre,litres\n";

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item = trim(s.substr(pos, comma == std::string_view::npos ? s.size() - pos : comma - pos));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool has_alpha(std::string_view s) {
  for (unsigned char c : s)
    if (std::isalpha(c) || c >= 0x80) return true;
  return false;
}

// Drops (...) groups, tracking nesting.
std::string strip_parentheticals(std::string_view s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (depth > 0) --depth;
    } else if (depth == 0) {
      out.push_back(c);
    }
  }
  return out;
}

struct NumberScan {
  Rational value;
  std::size_t end = 0;  // offset just past the parsed number
  bool ok = false;
};

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

std::size_t scan_digits(std::string_view s, std::size_t i, long long& value) {
  std::size_t start = i;
  value = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])) && i - start < 18) {
    value = value * 10 + (s[i] - '0');
    ++i;
  }
  return i == start ? start : i;
}

// Accepts "2", "1.5", "3/4" and "1 1/2".
NumberScan scan_quantity(std::string_view s, std::size_t i) {
  NumberScan out;
  long long whole = 0;
  std::size_t j = scan_digits(s, i, whole);
  if (j == i) return out;

  // decimal
  if (j < s.size() && s[j] == '.') {
    long long frac = 0;
    const std::size_t k = scan_digits(s, j + 1, frac);
    if (k > j + 1) {
      long long den = 1;
      for (std::size_t d = 0; d < k - j - 1; ++d) den *= 10;
      out.value = Rational::reduce(whole * den + frac, den);
      out.end = k;
      out.ok = true;
      return out;
    }
  }

  // simple fraction
  if (j < s.size() && s[j] == '/') {
    long long den = 0;
    const std::size_t k = scan_digits(s, j + 1, den);
    if (k > j + 1 && den != 0) {
      out.value = Rational::reduce(whole, den);
      out.end = k;
      out.ok = true;
      return out;
    }
  }

  // mixed fraction: "1 1/2"
  const std::size_t sp = skip_spaces(s, j);
  long long num = 0;
  const std::size_t n_end = scan_digits(s, sp, num);
  if (n_end > sp && n_end < s.size() && s[n_end] == '/') {
    long long den = 0;
    const std::size_t d_end = scan_digits(s, n_end + 1, den);
    if (d_end > n_end + 1 && den != 0) {
      out.value = Rational::reduce(whole * den + num, den);
      out.end = d_end;
      out.ok = true;
      return out;
    }
  }

  out.value = Rational::reduce(whole, 1);
  out.end = j;
  out.ok = true;
  return out;
}

}  // namespace

UnitLexicon UnitLexicon::parse(std::string_view content) {
  UnitLexicon lex;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    const std::string canonical = trim(line.substr(0, tab));
    if (canonical.empty()) continue;
    std::vector<std::string> variants;
    if (tab != std::string_view::npos) variants = split_csv_list(line.substr(tab + 1));
    lex.lookup_[canonical] = canonical;
    for (const auto& v : variants) lex.lookup_[v] = canonical;
    lex.entries_[canonical] = std::move(variants);
  }
  return lex;
}

UnitLexicon UnitLexicon::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open unit lexicon: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const UnitLexicon& UnitLexicon::builtin() {
  static const UnitLexicon lex = parse(kBuiltinUnits);
  return lex;
}

std::optional<std::string> UnitLexicon::canonical(std::string_view token) const {
  // Trailing period covers abbreviations like "tbsp.".
  std::string key = ascii_lower(token);
  if (!key.empty() && key.back() == '.') key.pop_back();
  const auto it = lookup_.find(key);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::string UnitLexicon::serialize() const {
  std::string out;
  for (const auto& [canonical, variants] : entries_) {
    out += canonical;
    out.push_back('\t');
    for (std::size_t i = 0; i < variants.size(); ++i) {
      if (i) out.push_back(',');
      out += variants[i];
    }
    out.push_back('\n');
  }
  return out;
}

IngredientSpec parse_ingredient(std::string_view raw, const UnitLexicon& units) {
  IngredientSpec spec;
  spec.raw = std::string(raw);

  const std::string stripped = strip_parentheticals(raw);
  std::size_t i = skip_spaces(stripped, 0);

  const NumberScan qty = scan_quantity(stripped, i);
  std::size_t rest_begin = i;
  if (qty.ok) {
    spec.quantity = qty.value;
    rest_begin = skip_spaces(stripped, qty.end);
  }

  // A unit is only recognized directly after a quantity.
  std::size_t unit_word_end = rest_begin;
  if (qty.ok) {
    while (unit_word_end < stripped.size() &&
           (std::isalpha(static_cast<unsigned char>(stripped[unit_word_end])) ||
            stripped[unit_word_end] == '.'))
      ++unit_word_end;
    if (unit_word_end > rest_begin) {
      const auto canon = units.canonical(
          std::string_view(stripped).substr(rest_begin, unit_word_end - rest_begin));
      if (canon) spec.unit = *canon;
    }
  }

  const std::size_t name_begin = spec.unit ? skip_spaces(stripped, unit_word_end) : rest_begin;
  auto content_tokens = [](std::string_view text) {
    std::vector<std::string> out;
    for (auto& tok : tokenize(text).tokens)
      if (has_alpha(tok)) out.push_back(std::move(tok));
    return out;
  };

  spec.name_tokens = content_tokens(std::string_view(stripped).substr(name_begin));
  if (spec.name_tokens.empty() && spec.unit) {
    // "2 cups" alone: the unit word is the only name there is.
    spec.unit.reset();
    spec.name_tokens = content_tokens(std::string_view(stripped).substr(rest_begin));
  }
  if (spec.name_tokens.empty()) {
    // Everything was inside parentheses; fall back to the full string.
    spec.name_tokens = content_tokens(raw);
  }
  if (spec.name_tokens.empty()) throw NoContentTokens(spec.raw);

  spec.head_noun = spec.name_tokens.back();
  return spec;
}

}  // namespace recipeval
