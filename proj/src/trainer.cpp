#include "faqkit/trainer.hpp"

#include <Eigen/SparseCore>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "faqkit/parallel.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/text.hpp"

namespace faqkit {

void FeaturizerConfig::validate() const {
  if (dimension < 2 || (dimension & (dimension - 1)) != 0)
    throw ConfigError("feature dimension must be a power of two, got " + std::to_string(dimension));
  if (ngram_sizes.empty()) throw ConfigError("at least one character n-gram size is required");
  for (std::size_t n : ngram_sizes)
    if (n == 0) throw ConfigError("character n-gram sizes must be positive");
  if (max_chars == 0) throw ConfigError("max_chars must be positive");
}

HashedFeaturizer::HashedFeaturizer(FeaturizerConfig config) : config_(std::move(config)) { config_.validate(); }

SparseVec HashedFeaturizer::operator()(std::string_view rendered) const {
  const std::uint64_t mask = config_.dimension - 1;
  std::map<Eigen::Index, double> counts;
  auto add = [&](std::string_view token) { counts[static_cast<Eigen::Index>(text::fnv1a64(token) & mask)] += 1.0; };

  std::string_view body = rendered;
  for (std::string_view marker : {kQuestionToken, kAnswerToken}) {
    if (body.starts_with(marker)) {
      add(marker);
      body.remove_prefix(marker.size());
      if (body.starts_with(' ')) body.remove_prefix(1);
      break;
    }
  }

  std::u32string cps = text::to_utf32(text::lowercase(body));
  if (cps.size() > config_.max_chars) cps.resize(config_.max_chars);
  cps.insert(cps.begin(), U' ');
  cps.push_back(U' ');
  std::string gram;
  for (std::size_t n : config_.ngram_sizes) {
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      gram.clear();
      for (std::size_t k = 0; k < n; ++k) text::append_utf8(gram, cps[i + k]);
      add(gram);
    }
  }

  SparseVec v(static_cast<Eigen::Index>(config_.dimension));
  double sq = 0.0;
  for (const auto& [k, c] : counts) sq += c * c;
  const double inv = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
  v.reserve(static_cast<Eigen::Index>(counts.size()));
  for (const auto& [k, c] : counts) v.insertBack(k) = c * inv;
  return v;
}

LinearBiEncoder::LinearBiEncoder(std::size_t d, FeaturizerConfig features, std::uint64_t seed)
    : featurizer_(std::move(features)), seed_(seed) {
  if (d == 0) throw ConfigError("embedding dimension must be positive");
  const auto big_d = featurizer_.dimension();
  w_.resize(static_cast<Eigen::Index>(d), big_d);
  SplitMix64 rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(big_d));
  for (Eigen::Index r = 0; r < w_.rows(); ++r)
    for (Eigen::Index c = 0; c < big_d; ++c) w_(r, c) = rng.gaussian() * scale;
}

LinearBiEncoder::LinearBiEncoder(Eigen::MatrixXd weights, FeaturizerConfig features, std::uint64_t seed)
    : w_(std::move(weights)), featurizer_(std::move(features)), seed_(seed) {
  if (w_.cols() != featurizer_.dimension())
    throw DataError("weight matrix has " + std::to_string(w_.cols()) + " columns, feature dimension is " +
                    std::to_string(featurizer_.dimension()));
  if (w_.rows() == 0) throw DataError("embedding dimension must be positive");
}

Eigen::VectorXd LinearBiEncoder::encode_features(const SparseVec& phi) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(w_.rows());
  for (SparseVec::InnerIterator it(phi); it; ++it) out.noalias() += it.value() * w_.col(it.index());
  return out;
}

Eigen::VectorXd LinearBiEncoder::encode_rendered(std::string_view rendered) const {
  return encode_features(featurizer_(rendered));
}

Eigen::VectorXd LinearBiEncoder::encode(std::string_view text, Role role) const {
  std::string rendered(role == Role::question ? kQuestionToken : kAnswerToken);
  rendered += ' ';
  rendered += text;
  return encode_rendered(rendered);
}

void LinearBiEncoder::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write model " + path.string());
  const auto& cfg = featurizer_.config();
  ordered_json head{{"d", w_.rows()}, {"D", w_.cols()}, {"ngram_sizes", cfg.ngram_sizes},
                    {"max_chars", cfg.max_chars}, {"seed", seed_}};
  std::string s = to_json_line(head);
  s.pop_back();
  s += ", \"W\": [";
  char buf[32];
  for (Eigen::Index r = 0; r < w_.rows(); ++r) {
    for (Eigen::Index c = 0; c < w_.cols(); ++c) {
      if (r || c) s += ", ";
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, static_cast<float>(w_(r, c)));
      s.append(buf, end);
    }
  }
  s += "]}\n";
  out << s;
  if (!out) throw IoError("write failed for " + path.string());
}

LinearBiEncoder LinearBiEncoder::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    FeaturizerConfig cfg;
    cfg.dimension = j.at("D").get<std::size_t>();
    cfg.ngram_sizes = j.at("ngram_sizes").get<std::vector<std::size_t>>();
    cfg.max_chars = j.value("max_chars", kDefaultMaxChars);
    cfg.validate();
    const auto d = j.at("d").get<Eigen::Index>();
    const auto& flat = j.at("W");
    const auto big_d = static_cast<Eigen::Index>(cfg.dimension);
    if (!flat.is_array() || static_cast<Eigen::Index>(flat.size()) != d * big_d)
      throw DataError("W must hold d*D values");
    Eigen::MatrixXd w(d, big_d);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < big_d; ++c) w(r, c) = static_cast<double>(flat[k++].get<float>());
    return LinearBiEncoder(std::move(w), std::move(cfg), j.at("seed").get<std::uint64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model " + path.string() + ": " + e.what());
  } catch (const ConfigError& e) {
    throw DataError("model " + path.string() + ": " + e.what());
  }
}

void TrainConfig::validate() const {
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) throw ConfigError("learning rate must be >= 0");
  if (!(clip_norm > 0.0)) throw ConfigError("gradient clip norm must be positive");
  if (d == 0) throw ConfigError("embedding dimension must be positive");
  features.validate();
}

BatchFeatures featurize_batch(const TrainingBatch& batch, const HashedFeaturizer& featurizer, unsigned threads) {
  BatchFeatures f;
  f.questions.resize(batch.entries.size());
  f.answers.resize(batch.entries.size());
  parallel_for(batch.entries.size(), threads, [&](std::size_t i) {
    const auto [q, a] = render_entry(batch.entries[i].question, batch.entries[i].answer);
    f.questions[i] = featurizer(q);
    f.answers[i] = featurizer(a);
  });
  return f;
}

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

SparseMatrix local_features(const std::vector<SparseVec>& vectors, const std::vector<Eigen::Index>& columns) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    for (SparseVec::InnerIterator it(vectors[j]); it; ++it) {
      const auto local = std::lower_bound(columns.begin(), columns.end(), it.index()) - columns.begin();
      triplets.emplace_back(static_cast<Eigen::Index>(local), static_cast<Eigen::Index>(j), it.value());
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(columns.size()), static_cast<Eigen::Index>(vectors.size()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

}  // namespace

BatchGradient batch_gradient(const Eigen::MatrixXd& weights, const BatchFeatures& features) {
  if (features.questions.size() != features.answers.size())
    throw DataError("batch has unequal question and answer counts");
  BatchGradient g;
  for (const auto* side : {&features.questions, &features.answers})
    for (const auto& v : *side)
      for (SparseVec::InnerIterator it(v); it; ++it) g.columns.push_back(it.index());
  std::sort(g.columns.begin(), g.columns.end());
  g.columns.erase(std::unique(g.columns.begin(), g.columns.end()), g.columns.end());

  const SparseMatrix phi_q = local_features(features.questions, g.columns);
  const SparseMatrix phi_a = local_features(features.answers, g.columns);
  Eigen::MatrixXd w_local(weights.rows(), static_cast<Eigen::Index>(g.columns.size()));
  for (std::size_t k = 0; k < g.columns.size(); ++k)
    w_local.col(static_cast<Eigen::Index>(k)) = weights.col(g.columns[k]);

  const Eigen::MatrixXd q = w_local * phi_q;
  const Eigen::MatrixXd a = w_local * phi_a;
  const Eigen::MatrixXd s = q.transpose() * a;
  g.loss = inbatch_nll(s);
  const Eigen::MatrixXd grad_s = inbatch_nll_gradient(s);
  const Eigen::MatrixXd d_q = a * grad_s.transpose();
  const Eigen::MatrixXd d_a = q * grad_s;
  g.d_weights = d_q * phi_q.transpose() + d_a * phi_a.transpose();
  return g;
}

TrainResult train(std::span<const TrainingBatch> batches, const TrainConfig& config) {
  config.validate();
  for (std::size_t b = 0; b < batches.size(); ++b)
    if (batches[b].size() < 2)
      throw DataError("batch " + std::to_string(b) + " has " + std::to_string(batches[b].size()) +
                      " entries; in-batch negatives need at least 2");

  TrainResult result{LinearBiEncoder(config.d, config.features, config.seed), {}};
  auto& w = result.model.weights();
  std::vector<BatchFeatures> features;
  features.reserve(batches.size());
  for (const auto& b : batches) features.push_back(featurize_batch(b, result.model.featurizer(), config.threads));

  std::size_t above = 0;
  for (std::size_t epoch = 1; epoch <= config.epochs && !batches.empty(); ++epoch) {
    double sum = 0.0;
    for (const auto& f : features) {
      const BatchGradient g = batch_gradient(w, f);
      sum += g.loss;
      const double norm = g.norm();
      const double scale = norm > config.clip_norm ? config.clip_norm / norm : 1.0;
      const double step = config.learning_rate * scale;
      for (std::size_t k = 0; k < g.columns.size(); ++k)
        w.col(g.columns[k]) -= step * g.d_weights.col(static_cast<Eigen::Index>(k));
    }
    const double mean = sum / static_cast<double>(features.size());
    result.loss_trace.push_back(mean);
    above = mean > 10.0 * result.loss_trace.front() ? above + 1 : 0;
    if (above >= 3) {
      std::ostringstream msg;
      msg << "training diverged at epoch " << epoch << ": mean loss " << mean << " exceeded 10x the initial "
          << result.loss_trace.front() << " for 3 consecutive epochs (learning rate " << config.learning_rate
          << ")";
      throw DataError(msg.str());
    }
  }
  return result;
}

void write_loss_trace(std::span<const double> trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write loss trace " + path.string());
  out << "epoch,mean_loss\n";
  char buf[32];
  for (std::size_t e = 0; e < trace.size(); ++e) {
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, trace[e]);
    out << (e + 1) << ',' << std::string_view(buf, static_cast<std::size_t>(end - buf)) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

EmbeddingTable embed_pages(const LinearBiEncoder& model, std::span<const FaqPage> pages, unsigned threads) {
  std::vector<std::vector<std::pair<Eigen::VectorXf, Eigen::VectorXf>>> vectors(pages.size());
  parallel_for(pages.size(), threads, [&](std::size_t i) {
    for (const auto& pair : pages[i].pairs) {
      const auto [q, a] = render_entry(pair.question, pair.answer);
      vectors[i].emplace_back(model.encode_rendered(q).cast<float>(), model.encode_rendered(a).cast<float>());
    }
  });
  EmbeddingTable table;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    for (std::size_t k = 0; k < vectors[i].size(); ++k) {
      table.insert({pages[i].page_id, Role::question, k}, std::move(vectors[i][k].first));
      table.insert({pages[i].page_id, Role::answer, k}, std::move(vectors[i][k].second));
    }
  }
  return table;
}

void export_embeddings(const LinearBiEncoder& model, std::span<const FaqPage> pages,
                       const std::filesystem::path& path, unsigned threads) {
  embed_pages(model, pages, threads).write(path);
}

EmbeddingScorer model_scorer(const LinearBiEncoder& model, std::string label) {
  return EmbeddingScorer(
      [&model](std::string_view text, Role role) -> Eigen::VectorXf { return model.encode(text, role).cast<float>(); },
      std::move(label));
}

}  // namespace faqkit
