#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "recipeval/text.hpp"

namespace recipeval {

// Per-order cumulative BLEU plus ROUGE F1 scores, all in [0,1].
struct NgramScore {
  std::map<int, double> bleu;  // n -> cumulative BLEU-n
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
};

// Cumulative BLEU-n for n = 1..max_n: geometric mean of clipped n-gram
// precisions with the brevity penalty exp(1 - |ref|/|cand|) when the
// candidate is shorter. Zero precisions are smoothed to 1e-9; orders where
// neither side has any n-gram count as vacuously perfect so bleu(x,x)[n] == 1
// for every non-empty x. Throws EmptyReference.
std::map<int, double> bleu(const TokenStream& candidate, const TokenStream& reference,
                           int max_n = 4);

struct RougeScore {
  double rouge1_f = 0.0;
  double rouge2_f = 0.0;
  double rougeL_f = 0.0;
};

// ROUGE-1/2 F1 over clipped n-gram overlap and ROUGE-L F1 from the longest
// common subsequence. Throws EmptyInput when either stream is empty.
RougeScore rouge(const TokenStream& candidate, const TokenStream& reference);

// Natural-log token probabilities from an external scorer.
struct LogProbTrace {
  std::vector<double> token_logprobs;

  std::size_t token_count() const { return token_logprobs.size(); }
};

// exp(-(sum of logprobs) / token_count). Throws EmptyTrace.
double perplexity(const LogProbTrace& trace);

}  // namespace recipeval
