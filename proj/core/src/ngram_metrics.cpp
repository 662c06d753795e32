#include "recipeval/ngram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "recipeval/errors.hpp"

namespace recipeval {

namespace {

constexpr double kSmoothingEpsilon = 1e-9;

// n-gram keys as separator-joined token strings; tokens never contain 0x1F.
std::unordered_map<std::string, int> ngram_counts(const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int j = 0; j < n; ++j) {
      if (j) key.push_back('\x1f');
      key += tokens[i + j];
    }
    ++counts[key];
  }
  return counts;
}

std::size_t clipped_overlap(const std::unordered_map<std::string, int>& cand,
                            const std::unordered_map<std::string, int>& ref) {
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += static_cast<std::size_t>(std::min(count, it->second));
  }
  return overlap;
}

std::size_t ngram_total(std::size_t len, int n) {
  return len >= static_cast<std::size_t>(n) ? len - n + 1 : 0;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      if (a[i - 1] == b[j - 1])
        cur[j] = prev[j - 1] + 1;
      else
        cur[j] = std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double f1(double precision, double recall) {
  return (precision > 0 && recall > 0) ? 2 * precision * recall / (precision + recall) : 0.0;
}

// F1 over clipped n-gram overlap; when neither side has any n-gram of this
// order the score is vacuously 1 so identical short streams score perfectly.
double rouge_n_f1(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
                  int n) {
  const std::size_t cand_total = ngram_total(cand.size(), n);
  const std::size_t ref_total = ngram_total(ref.size(), n);
  if (cand_total == 0 && ref_total == 0) return 1.0;
  if (cand_total == 0 || ref_total == 0) return 0.0;
  const std::size_t overlap = clipped_overlap(ngram_counts(cand, n), ngram_counts(ref, n));
  return f1(static_cast<double>(overlap) / cand_total, static_cast<double>(overlap) / ref_total);
}

}  // namespace

std::map<int, double> bleu(const TokenStream& candidate, const TokenStream& reference, int max_n) {
  if (reference.empty()) throw EmptyReference();
  max_n = std::clamp(max_n, 1, 4);

  const auto& cand = candidate.tokens;
  const auto& ref = reference.tokens;

  std::map<int, double> scores;
  if (cand.empty()) {
    for (int n = 1; n <= max_n; ++n) scores[n] = 0.0;
    return scores;
  }

  const double brevity =
      cand.size() >= ref.size()
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(cand.size()));

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const std::size_t cand_total = ngram_total(cand.size(), n);
    const std::size_t ref_total = ngram_total(ref.size(), n);
    double precision;
    if (cand_total == 0 && ref_total == 0) {
      precision = 1.0;  // neither side has n-grams of this order
    } else if (cand_total == 0) {
      precision = kSmoothingEpsilon;
    } else {
      const std::size_t overlap = clipped_overlap(ngram_counts(cand, n), ngram_counts(ref, n));
      precision = overlap ? static_cast<double>(overlap) / cand_total : kSmoothingEpsilon;
    }
    log_sum += std::log(precision);
    scores[n] = brevity * std::exp(log_sum / n);
  }
  return scores;
}

RougeScore rouge(const TokenStream& candidate, const TokenStream& reference) {
  if (candidate.empty() || reference.empty())
    throw EmptyInput("rouge requires non-empty candidate and reference");

  RougeScore out;
  out.rouge1_f = rouge_n_f1(candidate.tokens, reference.tokens, 1);
  out.rouge2_f = rouge_n_f1(candidate.tokens, reference.tokens, 2);

  const std::size_t lcs = lcs_length(candidate.tokens, reference.tokens);
  out.rougeL_f = f1(static_cast<double>(lcs) / candidate.size(),
                    static_cast<double>(lcs) / reference.size());
  return out;
}

double perplexity(const LogProbTrace& trace) {
  if (trace.token_logprobs.empty()) throw EmptyTrace();
  double sum = 0.0;
  for (double lp : trace.token_logprobs) sum += lp;
  return std::exp(-sum / static_cast<double>(trace.token_logprobs.size()));
}

}  // namespace recipeval
