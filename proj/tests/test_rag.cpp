#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "recipeval/domain_metrics.hpp"
#include "recipeval/errors.hpp"
#include "recipeval/substitution.hpp"

using namespace recipeval;

namespace {

std::string db_path() { return std::string(RECIPEVAL_DATA_DIR) + "/allergen_db.txt"; }

const std::vector<AllergenEntry>& shipped_db() {
  static const std::vector<AllergenEntry> db = load_allergen_db(db_path());
  return db;
}

const VectorIndex& shipped_index() {
  static const VectorIndex index = VectorIndex::build(chunk_db(shipped_db()), default_embedder());
  return index;
}

EmbeddingVector random_unit_vector(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> raw(kEmbeddingDim);
  double norm = 0.0;
  for (auto& v : raw) {
    v = gauss(rng);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  EmbeddingVector out;
  out.values.resize(kEmbeddingDim);
  for (std::size_t i = 0; i < kEmbeddingDim; ++i)
    out.values[i] = static_cast<float>(raw[i] / norm);
  return out;
}

}  // namespace

TEST_SUITE("rag") {

TEST_CASE("embedding is deterministic and normalized") {
  const EmbeddingVector a = embed("whole milk");
  const EmbeddingVector b = embed("whole milk");
  CHECK(a.values == b.values);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-6));

  const EmbeddingVector empty = embed("");
  CHECK(empty.is_zero());
  const EmbeddingVector punct = embed("!!! ...");
  CHECK(punct.is_zero());
}

TEST_CASE("trigram overlap orders similarity sensibly") {
  const EmbeddingVector milk = embed("milk");
  CHECK(cosine_similarity(milk, embed("oat milk")) >
        cosine_similarity(milk, embed("sunflower seeds")));
  CHECK(cosine_similarity(milk, milk) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("search: self match, clamping, empty index") {
  VectorIndex index;
  CHECK_THROWS_AS(index.search(embed("x"), 1), EmptyIndex);

  index.add("a", embed("almond flour"));
  index.add("b", embed("oat milk"));
  index.add("c", embed("hearts of palm"));

  const auto self = index.search(embed("oat milk"), 1);
  REQUIRE(self.size() == 1);
  CHECK(self[0].chunk_id == "b");
  CHECK(self[0].similarity == doctest::Approx(1.0).epsilon(1e-6));

  CHECK(index.search(embed("anything"), 10).size() == 3);
}

TEST_CASE("search matches a full-sort oracle and ignores insertion order") {
  std::mt19937 rng(512);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::pair<std::string, EmbeddingVector>> entries;
    for (int i = 0; i < 20; ++i)
      entries.emplace_back("id-" + std::to_string(i), random_unit_vector(rng));
    const EmbeddingVector query = random_unit_vector(rng);

    VectorIndex forward;
    for (const auto& [id, v] : entries) forward.add(id, v);
    VectorIndex backward;
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) backward.add(it->first, it->second);

    // oracle: exhaustive sort on (similarity desc, id asc)
    std::vector<SearchHit> oracle;
    for (const auto& [id, v] : entries) oracle.push_back({id, cosine_similarity(query, v)});
    std::sort(oracle.begin(), oracle.end(), [](const SearchHit& a, const SearchHit& b) {
      if (a.similarity != b.similarity) return a.similarity > b.similarity;
      return a.chunk_id < b.chunk_id;
    });
    oracle.resize(5);

    const auto got = forward.search(query, 5);
    const auto got_reversed = backward.search(query, 5);
    REQUIRE(got.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(got[i].chunk_id == oracle[i].chunk_id);
      CHECK(got[i].similarity == doctest::Approx(oracle[i].similarity).epsilon(1e-12));
      CHECK(got_reversed[i].chunk_id == got[i].chunk_id);
    }
  }
}

TEST_CASE("index persistence round-trips bit-exactly") {
  VectorIndex index;
  index.add("chunk-0000", embed("almond flour"));
  index.add("chunk-0001", embed("oat milk"));
  const auto path = (std::filesystem::temp_directory_path() / "rv_index.bin").string();
  index.save(path);
  const VectorIndex loaded = VectorIndex::load(path);
  REQUIRE(loaded.size() == 2);

  std::mt19937 rng(9);
  for (int i = 0; i < 10; ++i) {
    const EmbeddingVector q = random_unit_vector(rng);
    const auto a = index.search(q, 2);
    const auto b = loaded.search(q, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].chunk_id == b[k].chunk_id);
      CHECK(a[k].similarity == b[k].similarity);  // same float payload
    }
  }
}

TEST_CASE("alias substitution uses the appendix annotation form") {
  const auto result = substitute_recipe("Ingredients: milk, flour", shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk", "eggs", "fish"});
  CHECK(result.rewritten == "Ingredients: oat milk (substitute for milk), flour");

  // with every entry active, flour maps through the wheat row
  const auto all = substitute_recipe("Ingredients: flour", shipped_db(), shipped_index());
  CHECK(all.rewritten == "Ingredients: almond flour (substitute for wheat)");
}

TEST_CASE("milk and eggs map to the shipped defaults") {
  const auto result = substitute_recipe("Ingredients: milk, eggs", shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk", "eggs"});
  CHECK(result.rewritten ==
        "Ingredients: oat milk (substitute for milk), flax eggs (substitute for eggs)");
  REQUIRE(result.applied.size() == 2);
  CHECK(result.applied[0].allergen == "milk");
  CHECK(result.applied[0].substitute == "oat milk");
  CHECK(result.applied[1].allergen == "eggs");
  CHECK(result.applied[1].substitute == "flax eggs");
}

TEST_CASE("no database allergen means a byte-identical rewrite") {
  const std::string text = "Ingredients: rice, water\nboil the rice until tender";
  const auto result = substitute_recipe(text, shipped_db(), shipped_index());
  CHECK(result.rewritten == text);
  CHECK(result.applied.empty());
  CHECK(result.kept == std::vector<std::string>{"rice", "water"});
}

TEST_CASE("inactive allergens stay untouched") {
  const std::string text = "Ingredients: cottage cheese, milk";
  const auto result = substitute_recipe(text, shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk"});
  CHECK(result.rewritten == "Ingredients: cottage cheese, oat milk (substitute for milk)");
}

TEST_CASE("substitution rewrites steps consistently with the ingredient list") {
  const std::string text =
      "<|startoftext|>pancakes\nIngredients: flour, milk, eggs\n"
      "whisk the eggs with the milk\nbake at 350f";
  const auto result = substitute_recipe(text, shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk", "eggs"});
  CHECK(result.rewritten.find("whisk the flax eggs (substitute for eggs) with the oat milk "
                              "(substitute for milk)") != std::string::npos);
  // every mention recorded with its positions
  for (const auto& applied : result.applied) CHECK(applied.positions.size() == 2);
}

TEST_CASE("substitution is idempotent") {
  const std::string text = "Ingredients: milk, eggs, flour\npour the milk and beat the eggs";
  const auto first = substitute_recipe(text, shipped_db(), shipped_index(),
                                       kDefaultSubstitutionThreshold, {"milk", "eggs"});
  const auto second = substitute_recipe(first.rewritten, shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk", "eggs"});
  CHECK(second.applied.empty());
  CHECK(second.rewritten == first.rewritten);
}

TEST_CASE("longest alias wins: buttermilk maps through milk, not butter") {
  const auto result = substitute_recipe("Ingredients: buttermilk", shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"milk", "butter"});
  CHECK(result.rewritten == "Ingredients: oat milk (substitute for milk)");
}

TEST_CASE("retrieval path: multi-word mention gated by its head noun") {
  // "mixed nuts" holds no alias token, so it goes embed -> top-1 -> gate; a
  // fine-grained chunking keeps the tree nuts window lexically close and the
  // canonical head noun "nuts" matches the mention head.
  std::vector<AllergenEntry> db;
  for (const auto& entry : shipped_db())
    if (entry.allergen == "tree nuts" || entry.allergen == "milk") db.push_back(entry);
  const auto chunks = chunk_db(db, 12, 4);
  const VectorIndex index = VectorIndex::build(chunks, default_embedder());

  const auto top = index.search(embed("mixed nuts"), 1);
  REQUIRE_FALSE(top.empty());
  const double sim = top.front().similarity;
  REQUIRE(sim > 0.0);

  const auto result = substitute_recipe("Ingredients: mixed nuts", db, chunks, index,
                                        /*threshold=*/sim - 0.01, {"tree nuts"});
  CHECK(result.rewritten == "Ingredients: seeds (substitute for tree nuts)");
  REQUIRE(result.applied.size() == 1);
  CHECK(result.applied[0].allergen == "tree nuts");

  // the same mention under a stricter threshold is a no-match: keep original
  const auto strict = substitute_recipe("Ingredients: mixed nuts", db, chunks, index,
                                        /*threshold=*/sim + 0.01, {"tree nuts"});
  CHECK(strict.rewritten == "Ingredients: mixed nuts");
  CHECK(strict.applied.empty());
}

TEST_CASE("retrieval hits failing the head-noun gate are kept and flagged") {
  // lexically close to the milk windows, but the head noun is "soymilk"
  std::vector<AllergenEntry> db;
  for (const auto& entry : shipped_db())
    if (entry.allergen == "milk") db.push_back(entry);
  const auto chunks = chunk_db(db, 12, 4);
  const VectorIndex index = VectorIndex::build(chunks, default_embedder());

  const auto result = substitute_recipe("Ingredients: soymilk", db, chunks, index,
                                        /*threshold=*/0.01, {"milk"});
  CHECK(result.rewritten == "Ingredients: soymilk");
  CHECK(result.applied.empty());
  REQUIRE_FALSE(result.flags.empty());
  CHECK(result.flags[0].find("head-noun gate") != std::string::npos);
}

TEST_CASE("cross-allergen substitute selection skips unsafe candidates") {
  // tahini is the dairy substitute at rank 5 but also a sesame alias; with
  // sesame active the engine must never introduce it. nutritional yeast (3rd)
  // stays acceptable.
  auto db = shipped_db();
  for (auto& entry : db) {
    if (entry.allergen == "dairy")
      entry.substitutes = {"tahini", "coconut cream"};  // force the conflict
  }
  const VectorIndex index = VectorIndex::build(chunk_db(db), default_embedder());
  const auto result = substitute_recipe("Ingredients: dairy", db, index,
                                        kDefaultSubstitutionThreshold, {"dairy", "sesame"});
  CHECK(result.rewritten == "Ingredients: coconut cream (substitute for dairy)");
}

TEST_CASE("unknown active allergen is flagged") {
  const auto result = substitute_recipe("Ingredients: salt", shipped_db(), shipped_index(),
                                        kDefaultSubstitutionThreshold, {"pollen"});
  REQUIRE_FALSE(result.flags.empty());
  CHECK(result.flags[0].find("pollen") != std::string::npos);
}

TEST_CASE("field-wise record substitution preserves shape and ids work downstream") {
  const Recipe recipe = make_recipe(
      "cottage cheese waffles",
      {"flour", "salt", "eggs", "milk", "vegetable oil", "vanilla extract", "cottage cheese"},
      {"whisk the eggs and milk", "fold in cottage cheese", "bake at 375f for 8 minutes"});
  const auto out = substitute_recipe_fields(recipe, shipped_db(), shipped_index(),
                                            kDefaultSubstitutionThreshold, {"milk", "eggs", "fish"});
  CHECK(out.recipe.name == "cottage cheese waffles");
  REQUIRE(out.recipe.ingredients.size() == 7);
  CHECK(out.recipe.ingredients[3].raw == "oat milk (substitute for milk)");
  CHECK(out.recipe.ingredients[2].raw == "flax eggs (substitute for eggs)");
  CHECK(out.recipe.ingredients[6].raw == "cottage cheese");  // cheese not active
  REQUIRE(out.recipe.steps.size() == 3);
  CHECK(out.recipe.steps[0] ==
        "whisk the flax eggs (substitute for eggs) and oat milk (substitute for milk)");

  // pipeline compatibility: coverage still computable after substitution
  const double cov = ingredient_coverage(out.recipe, out.recipe.steps);
  CHECK(cov >= 0.0);
  CHECK(cov <= 1.0);
}

TEST_CASE("post-substitution safety scan is clean on generated fixtures") {
  std::mt19937 rng(1001);
  const std::vector<std::string> pantry = {"milk",  "eggs",   "flour", "butter", "cheese",
                                           "cream", "yogurt", "fish",  "shrimp", "rice",
                                           "salt",  "sugar",  "oil",   "water"};
  const std::vector<std::string> actions = {"mix the", "add", "pour the", "fold in", "whisk the"};
  const std::vector<std::string> active = {"milk", "eggs", "fish"};

  for (int iter = 0; iter < 100; ++iter) {
    std::vector<std::string> raws;
    for (std::size_t i = 0, n = 2 + rng() % 5; i < n; ++i)
      raws.push_back(pantry[rng() % pantry.size()]);
    std::vector<std::string> steps;
    for (std::size_t i = 0, n = 1 + rng() % 4; i < n; ++i)
      steps.push_back(actions[rng() % actions.size()] + " " + pantry[rng() % pantry.size()]);
    const Recipe recipe = make_recipe("fixture", raws, steps);

    const auto out = substitute_recipe_fields(recipe, shipped_db(), shipped_index(),
                                              kDefaultSubstitutionThreshold, active);
    std::string whole = out.recipe.name;
    for (const auto& ing : out.recipe.ingredients) whole += "\n" + ing.raw;
    for (const auto& step : out.recipe.steps) whole += "\n" + step;

    const auto unsafe = find_unsafe_mentions(whole, shipped_db(), active);
    CHECK_MESSAGE(unsafe.empty(), "iteration ", iter, " left: ", whole);
  }
}

}  // TEST_SUITE
