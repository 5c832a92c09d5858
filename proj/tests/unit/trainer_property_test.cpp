#include <doctest.h>

#include <cmath>

#include "../common/gradcheck.hpp"
#include "faqkit/batch.hpp"
#include "faqkit/fixtures.hpp"
#include "faqkit/retrieval.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/trainer.hpp"

using namespace faqkit;
using namespace faqkit::testing;

namespace {

FeaturizerConfig small_features() {
  FeaturizerConfig fc;
  fc.dimension = 32;
  return fc;
}

// Pages about one entity each; every question names the entity and asks one
// of six facts, every answer names the entity and states that fact.
std::vector<FaqPage> entity_pages(std::uint64_t seed, std::size_t pages) {
  static const char* q[] = {"When does {E} open?", "Where is {E} located?", "How much is a ticket for {E}?",
                            "Can I bring a dog to {E}?", "Is there parking near {E}?", "Who founded {E}?"};
  static const char* a[] = {"{E} opens every morning at nine.", "{E} sits on the north bank of the river.",
                            "Tickets for {E} cost twelve euros.", "Dogs on a leash are welcome at {E}.",
                            "A car park is two minutes from {E}.", "{E} was founded by a fishing family."};
  SplitMix64 g(seed);
  std::vector<FaqPage> out;
  for (std::size_t p = 0; p < pages; ++p) {
    const std::string e = "Villa " + fixtures::pseudo_word(g, 3);
    std::vector<FaqPair> pairs;
    for (int k = 0; k < 6; ++k) {
      auto fill = [&](std::string s) { return s.replace(s.find("{E}"), 3, e); };
      pairs.push_back({fill(q[k]), fill(a[k])});
    }
    out.push_back(make_page("https://www.villa" + std::to_string(p) + ".com/faq", "en", std::move(pairs)));
  }
  return out;
}

std::vector<TrainingBatch> per_page_batches(const std::vector<FaqPage>& pages) {
  BatchOptions o;
  o.capacity = 6;
  return build_batches(pages, o);
}

// Same capacity, pairs drawn across pages.
std::vector<TrainingBatch> cross_page_batches(const std::vector<FaqPage>& pages, std::uint64_t seed) {
  std::vector<BatchEntry> all;
  for (const auto& p : pages)
    for (std::size_t i = 0; i < p.size(); ++i) all.push_back({p.page_id, i, p.pairs[i].question, p.pairs[i].answer});
  SplitMix64 g(seed);
  g.shuffle(std::span<BatchEntry>(all));
  std::vector<TrainingBatch> out;
  for (std::size_t k = 0; k + 6 <= all.size(); k += 6) {
    TrainingBatch b;
    b.language = "en";
    b.capacity = 6;
    b.entries.assign(all.begin() + static_cast<std::ptrdiff_t>(k), all.begin() + static_cast<std::ptrdiff_t>(k + 6));
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

TEST_SUITE("trainer") {
  TEST_CASE("weight gradient matches central differences on a 3x3 batch, d=4, D=32") {
    const HashedFeaturizer f(small_features());
    const auto features = featurize_batch(three_pair_batch(), f);
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const LinearBiEncoder init(4, small_features(), seed);
      const auto at_init = finite_difference_check(init.weights(), features);
      CHECK(at_init.max_relative_error < 1e-4);
      CHECK(at_init.max_abs_gradient > 0.0);
      // Away from the small-norm initialization as well.
      const Eigen::MatrixXd scaled = init.weights() * std::sqrt(32.0);
      CHECK(finite_difference_check(scaled, features).max_relative_error < 1e-4);
    }
  }

  TEST_CASE("same-page negatives: per-page batching validates at least as well as cross-page batching") {
    const auto train_pages = entity_pages(11, 24);
    const auto val_pages = entity_pages(12, 8);
    TrainConfig cfg;
    cfg.epochs = 30;
    const auto a = train(per_page_batches(train_pages), cfg);
    const auto b = train(cross_page_batches(train_pages, 3), cfg);
    const double p_a = evaluate(val_pages, model_scorer(a.model)).overall.metrics.p_at_1;
    const double p_b = evaluate(val_pages, model_scorer(b.model)).overall.metrics.p_at_1;
    MESSAGE("per-page P@1 " << p_a << ", cross-page P@1 " << p_b);
    CHECK(p_a >= p_b);
  }

  TEST_CASE("untrained model on text without shared n-grams scores like the random baseline") {
    // Questions use letters a-m, answers n-z: no character n-gram is shared.
    SplitMix64 g(99);
    auto word = [&](char lo, int span) {
      std::string w;
      for (int i = 0; i < 5; ++i) w += static_cast<char>(lo + g.below(static_cast<std::uint64_t>(span)));
      return w;
    };
    std::vector<FaqPage> pages;
    for (int p = 0; p < 400; ++p) {
      std::vector<FaqPair> pairs;
      for (int k = 0; k < 5; ++k) pairs.push_back({word('a', 13) + " " + word('a', 13) + "?", word('n', 13) + " " + word('n', 13)});
      pages.push_back(make_page("https://r" + std::to_string(p) + ".example.com/", "en", std::move(pairs)));
    }
    const LinearBiEncoder m(64, FeaturizerConfig{}, 13);
    const double mrr = evaluate(pages, model_scorer(m)).overall.metrics.mrr;
    // Reciprocal-rank sd under a uniform ranking of 5, pages as independent units.
    double e2 = 0.0;
    for (int r = 1; r <= 5; ++r) e2 += 1.0 / (r * r) / 5.0;
    const double mean = expected_random_mrr(5);
    const double bound = 3.0 * std::sqrt(e2 - mean * mean) / std::sqrt(400.0);
    MESSAGE("untrained MRR " << mrr << " vs " << mean << " +- " << bound);
    CHECK(std::abs(mrr - mean) <= bound);
  }
}
