#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recipeval/text.hpp"

namespace recipeval {

// Exact quantity so "1 1/2" compares cleanly across runs. Always normalized:
// den > 0, gcd(num, den) == 1.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational reduce(long long n, long long d);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

// Closed measurement-unit lexicon. File format: one record per line,
// canonical<TAB>variant1,variant2,...  Unknown units fold into name tokens.
class UnitLexicon {
 public:
  static const UnitLexicon& builtin();
  static UnitLexicon load(const std::string& path);
  static UnitLexicon parse(std::string_view content);

  std::optional<std::string> canonical(std::string_view token) const;
  const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }
  std::string serialize() const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;  // canonical -> variants
  std::map<std::string, std::string> lookup_;                // variant -> canonical
};

struct IngredientSpec {
  std::string raw;
  std::optional<Rational> quantity;
  std::optional<std::string> unit;       // canonical unit token
  std::vector<std::string> name_tokens;  // lowercased, quantity/unit stripped
  std::string head_noun;                 // last content token of name_tokens
};

// Recognizes a leading quantity (integers, decimals, fractions and mixed
// fractions) and a unit from the lexicon, normalizes the remainder into name
// tokens, and strips parentheticals. Throws NoContentTokens when raw holds no
// alphabetic token at all.
IngredientSpec parse_ingredient(std::string_view raw,
                                const UnitLexicon& units = UnitLexicon::builtin());

}  // namespace recipeval
