#include "recipeval/allergen_db.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item =
        trim(s.substr(pos, comma == std::string_view::npos ? s.size() - pos : comma - pos));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::vector<AllergenEntry> parse_allergen_db(std::string_view content) {
  std::vector<AllergenEntry> entries;
  std::set<std::string> seen;
  AllergenEntry* current = nullptr;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string line = trim(content.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (pos > content.size()) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') throw SchemaViolation(line_no, "unterminated [allergen] header");
      const std::string name = ascii_lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      if (name.empty()) throw SchemaViolation(line_no, "empty allergen name");
      if (!seen.insert(name).second) throw DuplicateAllergen(name);
      entries.emplace_back();
      current = &entries.back();
      current->allergen = name;
    } else {
      if (!current) throw SchemaViolation(line_no, "field before first [allergen] header");
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos) throw SchemaViolation(line_no, "expected key=value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "aliases") {
        for (auto& alias : split_commas(value)) {
          const std::string lowered = ascii_lower(alias);
          if (lowered != current->allergen &&
              std::find(current->aliases.begin(), current->aliases.end(), lowered) ==
                  current->aliases.end())
            current->aliases.push_back(lowered);
        }
      } else if (key == "substitutes") {
        for (auto& sub : split_commas(value)) current->substitutes.push_back(ascii_lower(sub));
      } else if (key == "notes") {
        current->notes = value;
      } else {
        throw SchemaViolation(line_no, "unknown key: " + key);
      }
    }
    if (pos > content.size()) break;
  }

  if (entries.empty()) throw SchemaViolation(0, "no allergen entries");
  for (const auto& entry : entries) {
    if (entry.substitutes.empty())
      throw SchemaViolation(0, "entry '" + entry.allergen + "' has no substitutes");
  }
  return entries;
}

std::vector<AllergenEntry> load_allergen_db(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open allergen db: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_allergen_db(buf.str());
}

std::string serialize_allergen_db(const std::vector<AllergenEntry>& entries) {
  std::string out;
  for (const auto& entry : entries) {
    out += "[" + entry.allergen + "]\n";
    out += "aliases=";
    for (std::size_t i = 0; i < entry.aliases.size(); ++i) {
      if (i) out += ", ";
      out += entry.aliases[i];
    }
    out += "\nsubstitutes=";
    for (std::size_t i = 0; i < entry.substitutes.size(); ++i) {
      if (i) out += ", ";
      out += entry.substitutes[i];
    }
    out += "\nnotes=" + entry.notes + "\n\n";
  }
  return out;
}

std::string render_entry(const AllergenEntry& entry) {
  std::string out = "ALLERGEN: " + entry.allergen + ". SUBSTITUTES: ";
  for (std::size_t i = 0; i < entry.substitutes.size(); ++i) {
    if (i) out += ", ";
    out += entry.substitutes[i];
  }
  out += ". NOTES: " + entry.notes;
  return out;
}

RenderedDb render_db(const std::vector<AllergenEntry>& entries) {
  RenderedDb rendered;
  std::vector<std::pair<std::size_t, std::size_t>> char_spans;
  for (const auto& entry : entries) {
    if (!rendered.text.empty()) rendered.text += "\n\n";
    const std::size_t begin = rendered.text.size();
    rendered.text += render_entry(entry);
    char_spans.emplace_back(begin, rendered.text.size());
  }
  rendered.tokens = tokenize(rendered.text);

  rendered.entry_token_spans.resize(entries.size());
  std::size_t token = 0;
  for (std::size_t e = 0; e < char_spans.size(); ++e) {
    const auto [begin, end] = char_spans[e];
    while (token < rendered.tokens.size() && rendered.tokens.spans[token].begin < begin) ++token;
    const std::size_t first = token;
    while (token < rendered.tokens.size() && rendered.tokens.spans[token].begin < end) ++token;
    rendered.entry_token_spans[e] = {first, token};
  }
  return rendered;
}

std::vector<KnowledgeChunk> chunk_db(const std::vector<AllergenEntry>& entries, std::size_t size,
                                     std::size_t overlap) {
  if (size == 0 || overlap >= size) throw InvalidChunkParams(size, overlap);

  const RenderedDb rendered = render_db(entries);
  const std::size_t total = rendered.tokens.size();
  const std::size_t stride = size - overlap;

  std::vector<KnowledgeChunk> chunks;
  if (total == 0) return chunks;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = std::min(start + size, total);
    KnowledgeChunk chunk;
    char id[32];
    std::snprintf(id, sizeof(id), "chunk-%04zu", chunks.size());
    chunk.chunk_id = id;
    chunk.token_begin = start;
    chunk.token_end = end;
    if (end > start) {
      const std::size_t byte_begin = rendered.tokens.spans[start].begin;
      const std::size_t byte_end = rendered.tokens.spans[end - 1].end;
      chunk.text = rendered.text.substr(byte_begin, byte_end - byte_begin);
    }
    chunks.push_back(std::move(chunk));
    if (end >= total) break;
    start += stride;
  }
  return chunks;
}

}  // namespace recipeval
