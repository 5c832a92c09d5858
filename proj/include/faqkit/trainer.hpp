#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faqkit/batch.hpp"
#include "faqkit/corpus.hpp"
#include "faqkit/error.hpp"
#include "faqkit/retrieval.hpp"

namespace faqkit {

// ---- in-batch negative log-likelihood -------------------------------------

// loss = -(1/n) sum_i [ s_ii - logsumexp_j s_ij ]
template <typename Derived>
double inbatch_nll(const Eigen::MatrixBase<Derived>& scores) {
  const Eigen::Index n = scores.rows();
  if (n != scores.cols()) throw DataError("in-batch scores must be square");
  if (n < 2) throw DataError("in-batch scores need at least 2 entries");
  if (!scores.allFinite()) throw DataError("non-finite in-batch score");
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double top = static_cast<double>(scores.row(i).maxCoeff());
    const double lse = top + std::log((scores.row(i).template cast<double>().array() - top).exp().sum());
    total += lse - static_cast<double>(scores(i, i));
  }
  return total / static_cast<double>(n);
}

// d loss / d S = (softmax_rows(S) - I) / n
template <typename Derived>
Eigen::MatrixXd inbatch_nll_gradient(const Eigen::MatrixBase<Derived>& scores) {
  const Eigen::Index n = scores.rows();
  if (n != scores.cols()) throw DataError("in-batch scores must be square");
  if (n < 2) throw DataError("in-batch scores need at least 2 entries");
  if (!scores.allFinite()) throw DataError("non-finite in-batch score");
  Eigen::MatrixXd g = scores.template cast<double>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double top = g.row(i).maxCoeff();
    g.row(i) = (g.row(i).array() - top).exp().matrix();
    g.row(i) /= g.row(i).sum();
    g(i, i) -= 1.0;
  }
  return g / static_cast<double>(n);
}

// ---- featurization --------------------------------------------------------

inline constexpr std::size_t kDefaultFeatureDim = std::size_t{1} << 15;
inline constexpr std::size_t kDefaultEmbeddingDim = 64;
inline constexpr std::size_t kDefaultMaxChars = 512;

struct FeaturizerConfig {
  std::size_t dimension = kDefaultFeatureDim;
  std::vector<std::size_t> ngram_sizes{2, 3, 4};
  std::size_t max_chars = kDefaultMaxChars;

  void validate() const;
};

// Hashed character n-grams of a rendered text. A leading role marker is
// hashed as one token; the remainder is lowercased, truncated to max_chars
// code points and padded with one space each side. Output is L2-normalized.
class HashedFeaturizer {
 public:
  explicit HashedFeaturizer(FeaturizerConfig config = {});

  SparseVec operator()(std::string_view rendered) const;
  const FeaturizerConfig& config() const { return config_; }
  Eigen::Index dimension() const { return static_cast<Eigen::Index>(config_.dimension); }

 private:
  FeaturizerConfig config_;
};

// ---- model ----------------------------------------------------------------

// encode(t) = W * phi(t), one W for questions and answers.
class LinearBiEncoder {
 public:
  LinearBiEncoder(std::size_t d, FeaturizerConfig features, std::uint64_t seed);
  LinearBiEncoder(Eigen::MatrixXd weights, FeaturizerConfig features, std::uint64_t seed);

  Eigen::VectorXd encode_features(const SparseVec& phi) const;
  // Renders with the role marker first.
  Eigen::VectorXd encode(std::string_view text, Role role) const;
  Eigen::VectorXd encode_rendered(std::string_view rendered) const;

  const Eigen::MatrixXd& weights() const { return w_; }
  Eigen::MatrixXd& weights() { return w_; }
  const HashedFeaturizer& featurizer() const { return featurizer_; }
  std::size_t d() const { return static_cast<std::size_t>(w_.rows()); }
  std::uint64_t seed() const { return seed_; }

  // {"d", "D", "ngram_sizes", "max_chars", "seed", "W": row-major f32}
  void save(const std::filesystem::path& path) const;
  static LinearBiEncoder load(const std::filesystem::path& path);

 private:
  Eigen::MatrixXd w_;
  HashedFeaturizer featurizer_;
  std::uint64_t seed_;
};

// ---- training -------------------------------------------------------------

struct TrainConfig {
  double learning_rate = 0.05;
  std::size_t epochs = 50;
  std::uint64_t seed = 13;
  double clip_norm = 5.0;
  std::size_t d = kDefaultEmbeddingDim;
  FeaturizerConfig features;
  unsigned threads = 1;

  void validate() const;
};

struct BatchFeatures {
  std::vector<SparseVec> questions;
  std::vector<SparseVec> answers;
};

BatchFeatures featurize_batch(const TrainingBatch& batch, const HashedFeaturizer& featurizer, unsigned threads = 1);

// Loss and dW restricted to the feature columns the batch touches.
struct BatchGradient {
  double loss = 0.0;
  std::vector<Eigen::Index> columns;
  Eigen::MatrixXd d_weights;  // d x columns.size()

  double norm() const { return d_weights.norm(); }
};

// With Q = W Phi_q and A = W Phi_a (columns are entries), S = Q^T A,
// G = dL/dS, dQ = A G^T, dA = Q G and dW = dQ Phi_q^T + dA Phi_a^T.
BatchGradient batch_gradient(const Eigen::MatrixXd& weights, const BatchFeatures& features);

struct TrainResult {
  LinearBiEncoder model;
  // Mean batch loss before each epoch's updates, one entry per epoch.
  std::vector<double> loss_trace;
};

// Full-batch gradient descent, one step per batch per epoch, batches in the
// given order. Aborts with DataError when the epoch loss exceeds ten times
// the first epoch's for three consecutive epochs.
TrainResult train(std::span<const TrainingBatch> batches, const TrainConfig& config);

void write_loss_trace(std::span<const double> trace, const std::filesystem::path& path);

// Question and answer vectors of every pair, rendered with role markers.
EmbeddingTable embed_pages(const LinearBiEncoder& model, std::span<const FaqPage> pages, unsigned threads = 1);
void export_embeddings(const LinearBiEncoder& model, std::span<const FaqPage> pages,
                       const std::filesystem::path& path, unsigned threads = 1);

// Scorer that encodes texts with the model on the fly.
EmbeddingScorer model_scorer(const LinearBiEncoder& model, std::string label = "toy");

}  // namespace faqkit
