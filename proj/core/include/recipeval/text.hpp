#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace recipeval {

struct TokenSpan {
  std::size_t begin = 0;  // byte offset into the source text
  std::size_t end = 0;    // one past the last byte

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Lowercased word tokens plus the byte range each one came from. Spans are
// strictly increasing in start offset.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<TokenSpan> spans;

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

// Splits text into maximal runs of alphanumeric characters. A hyphen is kept
// when flanked by word characters ("re-mix"), and a degree sign sticks to a
// preceding digit ("350°f"). ASCII letters are lowercased; multibyte UTF-8
// sequences pass through untouched.
TokenStream tokenize(std::string_view text);

// Tokens joined by single spaces. tokenize(join_tokens(s)).tokens == s.tokens.
std::string join_tokens(const TokenStream& stream);

std::string ascii_lower(std::string_view text);

// Heuristic singular form used when matching mentions across plural variants
// ("eggs" ~ "egg", "berries" ~ "berry", "tomatoes" ~ "tomato").
std::string singular_fold(std::string_view token);

// Token count under the default word tokenizer; the pluggable length counter
// for corpus statistics.
std::size_t word_token_count(std::string_view text);

}  // namespace recipeval
