#pragma once

// Umbrella header for the recipe evaluation toolkit.

#include "recipeval/allergen_db.hpp"
#include "recipeval/commands.hpp"
#include "recipeval/corpus.hpp"
#include "recipeval/domain_metrics.hpp"
#include "recipeval/embedding.hpp"
#include "recipeval/errors.hpp"
#include "recipeval/hash.hpp"
#include "recipeval/ingredient.hpp"
#include "recipeval/jsonl.hpp"
#include "recipeval/judge.hpp"
#include "recipeval/llm_client.hpp"
#include "recipeval/ngram_metrics.hpp"
#include "recipeval/prompts.hpp"
#include "recipeval/recipe.hpp"
#include "recipeval/report.hpp"
#include "recipeval/substitution.hpp"
#include "recipeval/text.hpp"
#include "recipeval/vector_index.hpp"
