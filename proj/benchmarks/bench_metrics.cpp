#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "recipeval/recipeval.hpp"

using namespace recipeval;

namespace {

std::string synthetic_text(std::size_t words, unsigned seed) {
  const std::vector<std::string> vocab = {"mix",  "bake",  "flour", "milk",  "sugar", "oven",
                                          "stir", "salt",  "heat",  "cool",  "dough", "whisk",
                                          "pan",  "serve", "350f",  "butter"};
  std::mt19937 rng(seed);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) text.push_back(' ');
    text += vocab[rng() % vocab.size()];
  }
  return text;
}

const std::string kCandidate = synthetic_text(200, 1);
const std::string kReference = synthetic_text(220, 2);

}  // namespace

static void BM_Tokenize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(kCandidate));
}
BENCHMARK(BM_Tokenize);

static void BM_Bleu(benchmark::State& state) {
  const TokenStream cand = tokenize(kCandidate);
  const TokenStream ref = tokenize(kReference);
  for (auto _ : state) benchmark::DoNotOptimize(bleu(cand, ref, 4));
}
BENCHMARK(BM_Bleu);

static void BM_Rouge(benchmark::State& state) {
  const TokenStream cand = tokenize(kCandidate);
  const TokenStream ref = tokenize(kReference);
  for (auto _ : state) benchmark::DoNotOptimize(rouge(cand, ref));
}
BENCHMARK(BM_Rouge);

static void BM_IngredientCoverage(benchmark::State& state) {
  const Recipe recipe = make_recipe("bench", {"flour", "milk", "sugar", "butter", "salt"},
                                    {"placeholder"});
  const std::vector<std::string> steps = {synthetic_text(40, 3), synthetic_text(40, 4),
                                          synthetic_text(40, 5)};
  for (auto _ : state) benchmark::DoNotOptimize(ingredient_coverage(recipe, steps));
}
BENCHMARK(BM_IngredientCoverage);

static void BM_RecipeCoherence(benchmark::State& state) {
  const std::vector<std::string> steps = {"preheat oven to 350f", "mix flour and milk",
                                          "pour the mixture into the pan",
                                          "bake the mixture for 20 minutes"};
  for (auto _ : state) benchmark::DoNotOptimize(recipe_coherence(steps));
}
BENCHMARK(BM_RecipeCoherence);

static void BM_Embed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(embed(kCandidate));
}
BENCHMARK(BM_Embed);

static void BM_IndexSearch(benchmark::State& state) {
  VectorIndex index;
  for (int i = 0; i < 64; ++i)
    index.add("chunk-" + std::to_string(i), embed(synthetic_text(50, 100 + i)));
  const EmbeddingVector query = embed("whole milk");
  for (auto _ : state) benchmark::DoNotOptimize(index.search(query, 5));
}
BENCHMARK(BM_IndexSearch);

BENCHMARK_MAIN();
