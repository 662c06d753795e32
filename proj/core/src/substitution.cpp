#include "recipeval/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <optional>
#include <set>

#include "recipeval/errors.hpp"
#include "recipeval/ingredient.hpp"

namespace recipeval {

const Embedder& default_embedder() {
  static const TrigramHashEmbedder embedder;
  return embedder;
}

namespace {

constexpr std::size_t kNoEntry = static_cast<std::size_t>(-1);

struct Phrase {
  std::vector<std::string> folds;  // folded token sequence
  std::size_t entry = kNoEntry;    // db index for aliases, kNoEntry for safe phrases
};

std::vector<std::string> fold_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const auto& tok : tokenize(text).tokens) out.push_back(singular_fold(tok));
  return out;
}

struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool contains(std::size_t pos) const { return pos >= begin && pos < end; }
};

// "(substitute for X)" snippets are atomic; nothing inside them is rescanned.
std::vector<ByteRange> annotation_ranges(std::string_view text) {
  std::vector<ByteRange> ranges;
  std::size_t pos = 0;
  while (true) {
    const std::size_t open = text.find("(substitute for ", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = text.find(')', open);
    if (close == std::string_view::npos) break;
    ranges.push_back({open, close + 1});
    pos = close + 1;
  }
  return ranges;
}

// Alias/safe-phrase matcher over one database. Longest match wins; an active
// alias beats a safe phrase of equal length, so "tofu" is still substituted
// for a soy-allergic user even though it doubles as a cheese substitute.
class Matcher {
 public:
  Matcher(const std::vector<AllergenEntry>& db, const std::vector<std::string>& active_allergens)
      : db_(db) {
    for (const auto& name : active_allergens) active_.insert(ascii_lower(name));
    for (std::size_t e = 0; e < db.size(); ++e) {
      add_phrase(db[e].allergen, e);
      for (const auto& alias : db[e].aliases) add_phrase(alias, e);
      for (const auto& sub : db[e].substitutes) add_phrase(sub, kNoEntry);
    }
    for (auto& [first, phrases] : by_first_) {
      std::stable_sort(phrases.begin(), phrases.end(), [](const Phrase& a, const Phrase& b) {
        if (a.folds.size() != b.folds.size()) return a.folds.size() > b.folds.size();
        return (a.entry != kNoEntry) > (b.entry != kNoEntry);
      });
    }
  }

  const std::vector<AllergenEntry>& db() const { return db_; }

  bool entry_active(std::size_t e) const {
    return active_.empty() || active_.count(db_[e].allergen) > 0;
  }

  bool is_active_name(const std::string& name) const {
    return active_.empty() || active_.count(name) > 0;
  }

  const std::set<std::string>& active_set() const { return active_; }

  // Longest phrase starting at token i; skips nothing by itself.
  std::optional<Phrase> match_at(const std::vector<std::string>& folds, std::size_t i) const {
    const auto it = by_first_.find(folds[i]);
    if (it == by_first_.end()) return std::nullopt;
    for (const Phrase& phrase : it->second) {
      if (i + phrase.folds.size() > folds.size()) continue;
      bool all = true;
      for (std::size_t j = 0; j < phrase.folds.size(); ++j) {
        if (folds[i + j] != phrase.folds[j]) {
          all = false;
          break;
        }
      }
      if (all) return phrase;
    }
    return std::nullopt;
  }

  // True when the substitute drags in a *different* active allergen
  // ("soy milk" while soy is active). The entry's own allergen tokens are
  // exempt: its substitutes carry them by design ("oat milk").
  bool substitute_unsafe(const std::string& substitute, std::size_t own_entry) const {
    const auto folds = fold_tokens(substitute);
    for (std::size_t i = 0; i < folds.size(); ++i) {
      const auto it = by_first_.find(folds[i]);
      if (it == by_first_.end()) continue;
      for (const Phrase& phrase : it->second) {
        if (phrase.entry == kNoEntry || phrase.entry == own_entry) continue;
        if (!entry_active(phrase.entry)) continue;
        if (i + phrase.folds.size() > folds.size()) continue;
        bool all = true;
        for (std::size_t j = 0; j < phrase.folds.size(); ++j)
          if (folds[i + j] != phrase.folds[j]) {
            all = false;
            break;
          }
        if (all) return true;
      }
    }
    return false;
  }

 private:
  void add_phrase(const std::string& text, std::size_t entry) {
    Phrase phrase;
    phrase.folds = fold_tokens(text);
    phrase.entry = entry;
    if (phrase.folds.empty()) return;
    by_first_[phrase.folds.front()].push_back(std::move(phrase));
  }

  const std::vector<AllergenEntry>& db_;
  std::set<std::string> active_;
  std::map<std::string, std::vector<Phrase>> by_first_;
};

struct Replacement {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;
  std::size_t entry = kNoEntry;
};

std::string annotate(const std::string& substitute, const std::string& allergen) {
  return substitute + " (substitute for " + allergen + ")";
}

// Picks the first ranked substitute that does not contain another active
// allergen.
std::optional<std::string> choose_substitute(const Matcher& matcher, std::size_t entry) {
  for (const auto& sub : matcher.db()[entry].substitutes)
    if (!matcher.substitute_unsafe(sub, entry)) return sub;
  return std::nullopt;
}

// Token-level alias pass. `blocked` ranges (annotations, phrase replacements
// already planned) are skipped.
void alias_scan(std::string_view text, const Matcher& matcher,
                const std::vector<ByteRange>& blocked, std::vector<Replacement>& out,
                std::vector<std::string>& flags) {
  const TokenStream toks = tokenize(text);
  std::vector<std::string> folds;
  folds.reserve(toks.size());
  for (const auto& tok : toks.tokens) folds.push_back(singular_fold(tok));

  auto is_blocked = [&](std::size_t token_idx) {
    const auto& span = toks.spans[token_idx];
    for (const auto& range : blocked)
      if (range.contains(span.begin) || range.contains(span.end ? span.end - 1 : span.end))
        return true;
    return false;
  };

  std::size_t i = 0;
  while (i < folds.size()) {
    if (is_blocked(i)) {
      ++i;
      continue;
    }
    const auto match = matcher.match_at(folds, i);
    if (!match) {
      ++i;
      continue;
    }
    const std::size_t len = match->folds.size();
    bool tail_blocked = false;
    for (std::size_t j = i; j < i + len; ++j)
      if (is_blocked(j)) tail_blocked = true;
    if (tail_blocked) {
      ++i;
      continue;
    }
    if (match->entry == kNoEntry || !matcher.entry_active(match->entry)) {
      i += len;  // safe phrase or inactive allergen: leave as-is
      continue;
    }
    const auto substitute = choose_substitute(matcher, match->entry);
    const auto& entry = matcher.db()[match->entry];
    if (!substitute) {
      flags.push_back("no safe substitute for '" + entry.allergen +
                      "' under the active allergen list; kept original");
      i += len;
      continue;
    }
    out.push_back({toks.spans[i].begin, toks.spans[i + len - 1].end,
                   annotate(*substitute, entry.allergen), match->entry});
    i += len;
  }
}

// Case-insensitive whole-word occurrences of `phrase` in `text`.
std::vector<ByteRange> find_all_word_ci(std::string_view text, std::string_view phrase) {
  std::vector<ByteRange> out;
  if (phrase.empty()) return out;
  const std::string hay = ascii_lower(text);
  const std::string needle = ascii_lower(phrase);
  auto is_word = [&](std::size_t pos) {
    const unsigned char c = static_cast<unsigned char>(hay[pos]);
    return std::isalnum(c) != 0 || c >= 0x80;
  };
  std::size_t pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    const std::size_t end = pos + needle.size();
    const bool begin_boundary = pos == 0 || !is_word(pos - 1);
    const bool end_boundary = end >= hay.size() || !is_word(end);
    if (begin_boundary && end_boundary) {
      out.push_back({pos, end});
      pos = end;
    } else {
      ++pos;
    }
  }
  return out;
}

std::string apply_replacements(std::string_view text, std::vector<Replacement> replacements) {
  std::sort(replacements.begin(), replacements.end(),
            [](const Replacement& a, const Replacement& b) { return a.begin < b.begin; });
  std::string out;
  std::size_t cursor = 0;
  for (const auto& r : replacements) {
    if (r.begin < cursor) continue;  // overlap: earlier replacement wins
    out.append(text.substr(cursor, r.begin - cursor));
    out.append(r.text);
    cursor = r.end;
  }
  out.append(text.substr(cursor));
  return out;
}

struct MentionDecision {
  std::string phrase;  // original text to replace everywhere
  std::size_t entry = kNoEntry;
  std::string substitute;
};

// The Appendix-style retrieval flow for one ingredient mention. Returns a
// decision only when the head-noun gate accepts the retrieved chunk.
std::optional<MentionDecision> rag_decide(const std::string& mention, const Matcher& matcher,
                                          const VectorIndex& index,
                                          const std::vector<KnowledgeChunk>& chunks,
                                          const std::vector<std::pair<std::size_t, std::size_t>>&
                                              entry_spans,
                                          double threshold, const Embedder& embedder,
                                          std::vector<std::string>& flags) {
  IngredientSpec spec;
  try {
    spec = parse_ingredient(mention);
  } catch (const NoContentTokens&) {
    return std::nullopt;
  }

  std::string name_text;
  for (const auto& tok : spec.name_tokens) {
    if (!name_text.empty()) name_text.push_back(' ');
    name_text += tok;
  }
  const EmbeddingVector query = embedder.embed(name_text);
  if (query.is_zero()) return std::nullopt;

  const auto hits = index.search(query, 1);
  if (hits.empty() || hits.front().similarity < threshold) return std::nullopt;

  const auto chunk_it =
      std::find_if(chunks.begin(), chunks.end(),
                   [&](const KnowledgeChunk& c) { return c.chunk_id == hits.front().chunk_id; });
  if (chunk_it == chunks.end()) return std::nullopt;

  const std::string mention_head = singular_fold(spec.head_noun);
  for (std::size_t e = 0; e < entry_spans.size(); ++e) {
    const auto [ebegin, eend] = entry_spans[e];
    const bool overlaps = ebegin < chunk_it->token_end && eend > chunk_it->token_begin;
    if (!overlaps || !matcher.entry_active(e)) continue;

    auto head_matches = [&](const std::string& phrase) {
      const auto folds = fold_tokens(phrase);
      return !folds.empty() && folds.back() == mention_head;
    };
    const auto& entry = matcher.db()[e];
    bool gated = head_matches(entry.allergen);
    for (const auto& alias : entry.aliases)
      if (gated) break;
      else gated = head_matches(alias);
    if (!gated) continue;

    const auto substitute = choose_substitute(matcher, e);
    if (!substitute) {
      flags.push_back("no safe substitute for '" + entry.allergen +
                      "' under the active allergen list; kept '" + mention + "'");
      return std::nullopt;
    }

    // replace the name portion, leaving any quantity/unit prefix in place
    const TokenStream mtoks = tokenize(mention);
    std::size_t name_begin = std::string::npos;
    std::size_t name_end = 0;
    const std::string first_fold = singular_fold(spec.name_tokens.front());
    for (std::size_t t = 0; t < mtoks.size(); ++t) {
      if (name_begin == std::string::npos && singular_fold(mtoks.tokens[t]) == first_fold)
        name_begin = mtoks.spans[t].begin;
      if (name_begin != std::string::npos) name_end = mtoks.spans[t].end;
    }
    if (name_begin == std::string::npos) {
      name_begin = 0;
      name_end = mention.size();
    }
    MentionDecision decision;
    decision.phrase = mention.substr(name_begin, name_end - name_begin);
    decision.entry = e;
    decision.substitute = *substitute;
    return decision;
  }

  char simbuf[32];
  std::snprintf(simbuf, sizeof(simbuf), "%.3f", hits.front().similarity);
  flags.push_back("retrieval hit for '" + mention + "' (similarity " + simbuf + ", " +
                  hits.front().chunk_id + ") rejected by head-noun gate; kept original");
  return std::nullopt;
}

// True when the alias/safe scan finds anything (active alias or safe phrase)
// inside the mention; such mentions are handled by the alias pass or are
// already safe, so the retrieval path is skipped.
bool mention_has_exact_match(const std::string& mention, const Matcher& matcher) {
  const auto folds = fold_tokens(mention);
  for (std::size_t i = 0; i < folds.size(); ++i)
    if (matcher.match_at(folds, i)) return true;
  return false;
}

struct EngineOutput {
  std::string rewritten;
  std::vector<AppliedSubstitution> applied;
  std::vector<std::string> kept;
  std::vector<std::string> flags;
};

EngineOutput run_engine(std::string_view text, const std::vector<std::string>& mentions,
                        const Matcher& matcher, const VectorIndex& index,
                        const std::vector<KnowledgeChunk>& chunks,
                        const std::vector<std::pair<std::size_t, std::size_t>>& entry_spans,
                        double threshold, const Embedder& embedder) {
  EngineOutput out;

  const std::vector<ByteRange> annotations = annotation_ranges(text);
  std::vector<Replacement> replacements;

  // retrieval decisions per mention
  std::vector<MentionDecision> decisions;
  std::set<std::string> decided_phrases;
  std::set<std::string> substituted_mentions;
  for (const auto& mention : mentions) {
    if (mention_has_exact_match(mention, matcher)) continue;  // alias pass territory
    auto decision =
        rag_decide(mention, matcher, index, chunks, entry_spans, threshold, embedder, out.flags);
    if (decision && decided_phrases.insert(ascii_lower(decision->phrase)).second) {
      substituted_mentions.insert(mention);
      decisions.push_back(std::move(*decision));
    }
  }

  std::vector<ByteRange> blocked = annotations;
  for (const auto& decision : decisions) {
    const std::string replacement =
        annotate(decision.substitute, matcher.db()[decision.entry].allergen);
    for (const auto& range : find_all_word_ci(text, decision.phrase)) {
      bool overlaps_annotation = false;
      for (const auto& a : annotations)
        if (range.begin < a.end && range.end > a.begin) overlaps_annotation = true;
      if (overlaps_annotation) continue;
      replacements.push_back({range.begin, range.end, replacement, decision.entry});
      blocked.push_back(range);
    }
  }

  alias_scan(text, matcher, blocked, replacements, out.flags);

  // collect per-allergen positions
  std::map<std::size_t, AppliedSubstitution> by_entry;
  for (const auto& r : replacements) {
    auto& applied = by_entry[r.entry];
    if (applied.allergen.empty()) {
      applied.allergen = matcher.db()[r.entry].allergen;
      const std::string prefix = r.text.substr(0, r.text.find(" (substitute for "));
      applied.substitute = prefix;
    }
    applied.positions.push_back(r.begin);
  }
  for (auto& [entry, applied] : by_entry) {
    std::sort(applied.positions.begin(), applied.positions.end());
    out.applied.push_back(std::move(applied));
  }

  // mentions that ended up untouched
  for (const auto& mention : mentions) {
    if (substituted_mentions.count(mention)) continue;
    bool touched = false;
    const auto folds = fold_tokens(mention);
    for (std::size_t i = 0; i < folds.size() && !touched; ++i) {
      const auto match = matcher.match_at(folds, i);
      if (match && match->entry != kNoEntry && matcher.entry_active(match->entry))
        touched = true;
    }
    if (!touched) out.kept.push_back(mention);
  }

  out.rewritten = apply_replacements(text, std::move(replacements));
  return out;
}

std::vector<std::string> unknown_active_names(const Matcher& matcher,
                                              const std::vector<AllergenEntry>& db) {
  std::vector<std::string> unknown;
  for (const auto& name : matcher.active_set()) {
    const bool known = std::any_of(db.begin(), db.end(), [&](const AllergenEntry& e) {
      return e.allergen == name;
    });
    if (!known) unknown.push_back(name);
  }
  return unknown;
}

}  // namespace

SubstitutionResult substitute_recipe(std::string_view recipe_text,
                                     const std::vector<AllergenEntry>& db,
                                     const std::vector<KnowledgeChunk>& chunks,
                                     const VectorIndex& index, double threshold,
                                     const std::vector<std::string>& active_allergens,
                                     const Embedder& embedder) {
  const Matcher matcher(db, active_allergens);
  const RenderedDb rendered = render_db(db);

  SubstitutionResult result;
  result.original = std::string(recipe_text);
  for (const auto& name : unknown_active_names(matcher, db))
    result.flags.push_back("allergen '" + name + "' is not in the database");

  const ParsedRecipeText parsed = parse_recipe_text(recipe_text);
  EngineOutput out = run_engine(recipe_text, parsed.ingredient_raws, matcher, index, chunks,
                                rendered.entry_token_spans, threshold, embedder);
  result.rewritten = std::move(out.rewritten);
  result.applied = std::move(out.applied);
  result.kept = std::move(out.kept);
  for (auto& flag : out.flags) result.flags.push_back(std::move(flag));
  return result;
}

SubstitutionResult substitute_recipe(std::string_view recipe_text,
                                     const std::vector<AllergenEntry>& db,
                                     const VectorIndex& index, double threshold,
                                     const std::vector<std::string>& active_allergens,
                                     const Embedder& embedder) {
  return substitute_recipe(recipe_text, db, chunk_db(db), index, threshold, active_allergens,
                           embedder);
}

RecordSubstitution substitute_recipe_fields(const Recipe& recipe,
                                            const std::vector<AllergenEntry>& db,
                                            const VectorIndex& index, double threshold,
                                            const std::vector<std::string>& active_allergens,
                                            const Embedder& embedder) {
  // Compose the canonical text, run the shared engine once, then split the
  // rewritten text back into fields.
  std::string text = format_model_input(recipe);
  for (const auto& step : recipe.steps) {
    text.push_back('\n');
    text += step;
  }

  RecordSubstitution out;
  out.detail = substitute_recipe(text, db, index, threshold, active_allergens, embedder);

  const ParsedRecipeText parsed = parse_recipe_text(out.detail.rewritten);
  out.recipe = make_recipe(parsed.name, parsed.ingredient_raws, parsed.steps);
  return out;
}

std::vector<std::string> find_unsafe_mentions(std::string_view text,
                                              const std::vector<AllergenEntry>& db,
                                              const std::vector<std::string>& active_allergens) {
  const Matcher matcher(db, active_allergens);
  std::vector<Replacement> found;
  std::vector<std::string> flags;
  alias_scan(text, matcher, annotation_ranges(text), found, flags);
  std::vector<std::string> mentions;
  for (const auto& r : found)
    mentions.push_back(std::string(text.substr(r.begin, r.end - r.begin)));
  return mentions;
}

}  // namespace recipeval
