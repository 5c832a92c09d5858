#include <doctest.h>

#include <cmath>
#include <numeric>

#include "faqkit/batch.hpp"
#include "faqkit/error.hpp"
#include "faqkit/fixtures.hpp"
#include "faqkit/retrieval.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/trainer.hpp"
#include "helpers.hpp"

using namespace faqkit;
using namespace faqkit::testing;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed, double scale = 1.0) {
  SplitMix64 g(seed);
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = scale * g.gaussian();
  return m;
}

// Loss straight from the definition, no max-subtraction.
double naive_nll(const Eigen::MatrixXd& s) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    double z = 0.0;
    for (Eigen::Index j = 0; j < s.cols(); ++j) z += std::exp(s(i, j));
    total += -(s(i, i) - std::log(z));
  }
  return total / static_cast<double>(s.rows());
}

TrainingBatch batch_of(const FaqPage& page) {
  TrainingBatch b;
  b.language = page.language;
  for (std::size_t i = 0; i < page.pairs.size(); ++i)
    b.entries.push_back({page.page_id, i, page.pairs[i].question, page.pairs[i].answer});
  b.capacity = b.entries.size();
  return b;
}

}  // namespace

TEST_SUITE("trainer") {
  TEST_CASE("in-batch nll reference values") {
    CHECK(inbatch_nll(Eigen::MatrixXd::Constant(4, 4, 0.3)) == doctest::Approx(std::log(4.0)).epsilon(1e-12));
    Eigen::MatrixXd sat = Eigen::MatrixXd::Zero(3, 3);
    sat.diagonal().setConstant(40.0);
    CHECK(inbatch_nll(sat) < 1e-10);
    const auto r = random_matrix(3, 3, 7);
    CHECK(std::abs(inbatch_nll(r) - naive_nll(r)) < 1e-12);
    CHECK(inbatch_nll(Eigen::MatrixXd::Constant(3, 3, 1000.0)) == doctest::Approx(std::log(3.0)));
  }

  TEST_CASE("in-batch nll rejects bad input") {
    CHECK_THROWS_AS(inbatch_nll(Eigen::MatrixXd::Zero(2, 3)), DataError);
    CHECK_THROWS_AS(inbatch_nll(Eigen::MatrixXd::Zero(1, 1)), DataError);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
    s(0, 1) = INFINITY;
    CHECK_THROWS_AS(inbatch_nll(s), DataError);
  }

  TEST_CASE("property: shift invariance and bounds") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
      Eigen::MatrixXd s = random_matrix(n, n, seed, 3.0);
      const double loss = inbatch_nll(s);
      CHECK(std::abs(inbatch_nll((s.array() + 17.5).matrix()) - loss) < 1e-12);
      double worst = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, s.row(i).maxCoeff() - s(i, i));
      CHECK(loss <= std::log(static_cast<double>(n)) + worst + 1e-12);
      for (Eigen::Index i = 0; i < n; ++i) s(i, i) = s.row(i).maxCoeff() + 0.1;
      CHECK(inbatch_nll(s) >= 0.0);
    }
  }

  TEST_CASE("score gradient matches finite differences") {
    const auto s = random_matrix(4, 4, 3);
    const auto g = inbatch_nll_gradient(s);
    const double eps = 1e-6;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Eigen::MatrixXd p = s, m = s;
        p(i, j) += eps;
        m(i, j) -= eps;
        CHECK(g(i, j) == doctest::Approx((inbatch_nll(p) - inbatch_nll(m)) / (2 * eps)).epsilon(1e-6));
      }
    CHECK(std::abs(g.sum()) < 1e-12);
  }

  TEST_CASE("featurizer") {
    const HashedFeaturizer f;
    const auto a = f("<question> Where is the EAST gate?");
    CHECK(a.norm() == doctest::Approx(1.0));
    CHECK((a - f("<question> Where is the EAST gate?")).norm() == 0.0);
    CHECK((a - f("<question> where is the east gate?")).norm() == 0.0);
    CHECK((a - f("<answer> Where is the EAST gate?")).norm() > 0.0);
    FeaturizerConfig bad;
    bad.dimension = 1000;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    FeaturizerConfig tiny;
    tiny.max_chars = 4;
    const HashedFeaturizer t(tiny);
    CHECK((t("<answer> abcdXYZ") - t("<answer> abcd")).norm() == 0.0);
  }

  TEST_CASE("encoder is shared between roles and initialized at 1/sqrt(D)") {
    FeaturizerConfig fc;
    fc.dimension = 1 << 12;
    const LinearBiEncoder m(16, fc, 5);
    const double var = m.weights().array().square().mean();
    CHECK(var * static_cast<double>(fc.dimension) == doctest::Approx(1.0).epsilon(0.05));
    const auto [q, a] = render_entry("Same text?", "Same text?");
    CHECK(m.encode("Same text?", Role::question) == m.encode_rendered(q));
    CHECK(m.encode("Same text?", Role::answer) == m.encode_rendered(a));
  }

  TEST_CASE("zero learning rate leaves W unchanged and the loss flat") {
    const auto pages = fixtures::separable_pages(1, 4, 3);
    std::vector<TrainingBatch> batches;
    for (const auto& p : pages) batches.push_back(batch_of(p));
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    cfg.epochs = 4;
    cfg.d = 8;
    cfg.features.dimension = 1 << 10;
    const auto r = train(batches, cfg);
    const LinearBiEncoder init(cfg.d, cfg.features, cfg.seed);
    CHECK(r.model.weights() == init.weights());
    for (double l : r.loss_trace) CHECK(l == r.loss_trace.front());
  }

  TEST_CASE("separable corpus: descent lowers the loss and solves the training pages") {
    const auto pages = fixtures::separable_pages(3, 6, 4);
    std::vector<TrainingBatch> batches;
    for (const auto& p : pages) batches.push_back(batch_of(p));
    TrainConfig cfg;
    cfg.epochs = 30;
    const auto r = train(batches, cfg);
    REQUIRE(r.loss_trace.size() == 30);
    CHECK(r.loss_trace.back() < r.loss_trace.front());
    TempDir dir("train");
    export_embeddings(r.model, pages, dir / "e.jsonl");
    const auto table = EmbeddingTable::read(dir / "e.jsonl");
    CHECK(evaluate(pages, EmbeddingScorer(table)).overall.metrics.p_at_1 == 1.0);
  }

  TEST_CASE("batches need two entries") {
    TrainingBatch b;
    b.language = "en";
    b.entries.push_back({"p", 0, "q?", "a"});
    const std::vector<TrainingBatch> batches{b};
    CHECK_THROWS_AS(train(batches, TrainConfig{}), DataError);
  }

  TEST_CASE("model file round trip and exported embeddings reproduce model scores") {
    TempDir dir("model");
    FeaturizerConfig fc;
    fc.dimension = 1 << 10;
    const LinearBiEncoder m(8, fc, 21);
    m.save(dir / "m.json");
    const auto j = load_json(dir / "m.json");
    CHECK(j["d"] == 8);
    CHECK(j["D"] == 1024);
    CHECK(j["W"].size() == 8 * 1024);
    const auto back = LinearBiEncoder::load(dir / "m.json");
    CHECK((back.weights() - m.weights()).cwiseAbs().maxCoeff() < 1e-6);
    const auto pages = fixtures::separable_pages(2, 2, 3);
    export_embeddings(m, pages, dir / "e.jsonl");
    const auto table = EmbeddingTable::read(dir / "e.jsonl");
    const ScoreMatrix from_table = embedding_score_page(pages[0], table);
    const ScoreMatrix direct = model_scorer(m).score_page(pages[0]);
    CHECK((from_table - direct).cwiseAbs().maxCoeff() < 1e-5 * std::max(1.0, direct.cwiseAbs().maxCoeff()));
  }

  TEST_CASE("loss trace csv") {
    TempDir dir("loss");
    const std::vector<double> trace{1.5, 0.25};
    write_loss_trace(trace, dir / "l.csv");
    CHECK(slurp(dir / "l.csv") == "epoch,mean_loss\n1,1.5\n2,0.25\n");
  }
}
