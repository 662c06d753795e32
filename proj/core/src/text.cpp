#include "recipeval/text.hpp"

#include <cctype>

namespace recipeval {
namespace {

bool is_ascii_alnum(unsigned char c) { return std::isalnum(c) != 0; }

// Multibyte UTF-8 sequences count as word bytes so accented ingredient names
// stay whole. The degree sign (C2 B0) is handled separately below.
bool is_word_byte(unsigned char c) { return is_ascii_alnum(c) || c >= 0x80; }

bool is_degree_sign(std::string_view text, std::size_t i) {
  return i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xC2 &&
         static_cast<unsigned char>(text[i + 1]) == 0xB0;
}

}  // namespace

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  std::string current;
  std::size_t start = 0;

  auto flush = [&](std::size_t end) {
    if (current.empty()) return;
    out.tokens.push_back(current);
    out.spans.push_back({start, end});
    current.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_degree_sign(text, i)) {
      // "350°f" stays one token; a degree sign elsewhere is a separator.
      if (!current.empty() && is_ascii_alnum(static_cast<unsigned char>(current.back())) &&
          std::isdigit(static_cast<unsigned char>(current.back()))) {
        current.append("\xC2\xB0");
        i += 2;
        continue;
      }
      flush(i);
      i += 2;
      continue;
    }
    if (is_word_byte(c)) {
      if (current.empty()) start = i;
      current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
      ++i;
      continue;
    }
    if (c == '-' && !current.empty() && i + 1 < text.size() &&
        (is_word_byte(static_cast<unsigned char>(text[i + 1])) || is_degree_sign(text, i + 1))) {
      current.push_back('-');
      ++i;
      continue;
    }
    flush(i);
    ++i;
  }
  flush(text.size());
  return out;
}

std::string join_tokens(const TokenStream& stream) {
  std::string out;
  for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += stream.tokens[i];
  }
  return out;
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string singular_fold(std::string_view token) {
  std::string t(token);
  auto ends_with = [&](std::string_view suffix) {
    return t.size() >= suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (t.size() > 4 && ends_with("ies")) {
    t.replace(t.size() - 3, 3, "y");
    return t;
  }
  if (t.size() > 3 && ends_with("oes")) {
    t.erase(t.size() - 2);
    return t;
  }
  if (t.size() > 4 && (ends_with("sses") || ends_with("shes") || ends_with("ches") ||
                       ends_with("xes") || ends_with("zes"))) {
    t.erase(t.size() - 2);
    return t;
  }
  if (t.size() > 3 && ends_with("s") && !ends_with("ss") && !ends_with("us") && !ends_with("is")) {
    t.erase(t.size() - 1);
    return t;
  }
  return t;
}

std::size_t word_token_count(std::string_view text) { return tokenize(text).size(); }

}  // namespace recipeval
