#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/error.hpp"
#include "faqkit/json_line.hpp"

namespace faqkit {

// Rows are a page's questions (queries), columns its answers (candidates).
using ScoreMatrix = Eigen::MatrixXd;
using SparseVec = Eigen::SparseVector<double>;

// ---- ranking -------------------------------------------------------------

struct GoldRank {
  std::size_t rank = 1;
  // Candidates other than gold whose score equals the gold score.
  std::size_t ties = 0;

  friend bool operator==(const GoldRank&, const GoldRank&) = default;
};

// rank = 1 + #{j != gold : s_j > s_gold} + #{j < gold : s_j == s_gold}
template <typename Derived>
GoldRank gold_rank(const Eigen::DenseBase<Derived>& scores, Eigen::Index gold) {
  if (gold < 0 || gold >= scores.size()) throw DataError("gold index out of range");
  const auto s_gold = scores(gold);
  if (std::isnan(static_cast<double>(s_gold))) throw DataError("NaN score");
  GoldRank r;
  for (Eigen::Index j = 0; j < scores.size(); ++j) {
    const auto s = scores(j);
    if (std::isnan(static_cast<double>(s))) throw DataError("NaN score");
    if (j == gold) continue;
    if (s > s_gold) {
      ++r.rank;
    } else if (s == s_gold) {
      ++r.ties;
      if (j < gold) ++r.rank;
    }
  }
  return r;
}

// Gold answer of row i is column gold[i].
template <typename Derived>
std::vector<GoldRank> rank_and_score(const Eigen::MatrixBase<Derived>& scores,
                                     std::span<const Eigen::Index> gold) {
  if (static_cast<Eigen::Index>(gold.size()) != scores.rows())
    throw DataError("gold column count does not match query count");
  std::vector<GoldRank> ranks;
  ranks.reserve(gold.size());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) ranks.push_back(gold_rank(scores.row(i), gold[i]));
  return ranks;
}

// Gold on the diagonal: question i is answered by answer i.
template <typename Derived>
std::vector<GoldRank> rank_and_score(const Eigen::MatrixBase<Derived>& scores) {
  if (scores.cols() < scores.rows()) throw DataError("fewer candidates than queries");
  std::vector<Eigen::Index> gold(static_cast<std::size_t>(scores.rows()));
  for (std::size_t i = 0; i < gold.size(); ++i) gold[i] = static_cast<Eigen::Index>(i);
  return rank_and_score(scores, std::span<const Eigen::Index>(gold));
}

// ---- metrics -------------------------------------------------------------

struct Metrics {
  double p_at_1 = 0.0;
  double mrr = 0.0;
  double r_at_5 = 0.0;
  std::size_t queries = 0;
};

// Micro-averaged P@1, MRR and R@5. Throws on an empty list or rank 0.
Metrics compute_metrics(std::span<const std::size_t> ranks);

// H_n / n: expected MRR of a uniformly random ranking of n candidates.
double expected_random_mrr(std::size_t candidates);

// ---- scorers -------------------------------------------------------------

class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual std::string name() const = 0;
  virtual ScoreMatrix score_page(const FaqPage& page) const = 0;
  // Scores of every answer on `page` against a free-text query.
  virtual Eigen::VectorXd score_query(std::string_view query, const FaqPage& page) const = 0;
};

// Lowercased maximal runs of letters and digits.
std::vector<std::string> word_tokens(std::string_view text);
// Word n-grams of sizes min_n..max_n, tokens joined by one space.
std::vector<std::string> word_ngrams(std::span<const std::string> tokens, std::size_t min_n, std::size_t max_n);

// Per-page TF-IDF model: vocabulary of 1-3 word n-grams from the answers,
// raw counts, idf = ln((1 + N) / (1 + df)) + 1, L2-normalized vectors.
class TfidfModel {
 public:
  explicit TfidfModel(std::span<const std::string> documents, std::size_t min_n = 1, std::size_t max_n = 3);

  SparseVec transform(std::string_view text) const;
  const std::vector<SparseVec>& document_vectors() const { return documents_; }
  const std::unordered_map<std::string, Eigen::Index>& vocabulary() const { return vocabulary_; }
  const Eigen::VectorXd& idf() const { return idf_; }

 private:
  std::size_t min_n_;
  std::size_t max_n_;
  std::unordered_map<std::string, Eigen::Index> vocabulary_;
  Eigen::VectorXd idf_;
  std::vector<SparseVec> documents_;
};

ScoreMatrix tfidf_score_page(const FaqPage& page);

class TfidfScorer final : public Scorer {
 public:
  std::string name() const override { return "tfidf"; }
  ScoreMatrix score_page(const FaqPage& page) const override { return tfidf_score_page(page); }
  Eigen::VectorXd score_query(std::string_view query, const FaqPage& page) const override;
};

enum class Role { question, answer };
std::string_view to_string(Role role);

struct EmbeddingKey {
  std::string page_id;
  Role role = Role::question;
  std::size_t index = 0;

  friend auto operator<=>(const EmbeddingKey&, const EmbeddingKey&) = default;
};

std::string describe(const EmbeddingKey& key);

// Fixed-dimension vectors keyed by (page, role, pair index).
class EmbeddingTable {
 public:
  void insert(EmbeddingKey key, Eigen::VectorXf vector);
  const Eigen::VectorXf& at(const EmbeddingKey& key) const;
  bool contains(const EmbeddingKey& key) const { return entries_.contains(key); }
  Eigen::Index dimension() const { return dimension_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<EmbeddingKey, Eigen::VectorXf>& entries() const { return entries_; }

  // JSON Lines {"page", "role", "index", "vector": [f32...]}.
  static EmbeddingTable read(const std::filesystem::path& path);
  void write(const std::filesystem::path& path) const;

 private:
  std::map<EmbeddingKey, Eigen::VectorXf> entries_;
  Eigen::Index dimension_ = 0;
};

// h(q_i, a_j) = <v_qi, v_aj>
ScoreMatrix embedding_score_page(const FaqPage& page, const EmbeddingTable& table);

class EmbeddingScorer final : public Scorer {
 public:
  using Encoder = std::function<Eigen::VectorXf(std::string_view text, Role role)>;

  // Scores from a precomputed table; free-text queries are unsupported.
  explicit EmbeddingScorer(const EmbeddingTable& table, std::string label = "embedding");
  // Scores by encoding texts on the fly.
  explicit EmbeddingScorer(Encoder encoder, std::string label = "embedding");

  std::string name() const override { return label_; }
  ScoreMatrix score_page(const FaqPage& page) const override;
  Eigen::VectorXd score_query(std::string_view query, const FaqPage& page) const override;

 private:
  const EmbeddingTable* table_ = nullptr;
  Encoder encoder_;
  std::string label_;
};

// Independent U[0,1) scores, seeded per page so evaluation order is irrelevant.
class RandomScorer final : public Scorer {
 public:
  explicit RandomScorer(std::uint64_t seed) : seed_(seed) {}
  std::string name() const override { return "random"; }
  ScoreMatrix score_page(const FaqPage& page) const override;
  Eigen::VectorXd score_query(std::string_view query, const FaqPage& page) const override;
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// ---- evaluation ----------------------------------------------------------

struct PageEval {
  std::string page_id;
  std::string language;
  std::size_t candidates = 0;
  std::size_t ties = 0;
  std::vector<std::size_t> ranks;
  Metrics metrics;
};

struct GroupEval {
  Metrics metrics;
  std::size_t pages = 0;
  std::size_t ties = 0;
};

struct EvalReport {
  std::string scorer;
  GroupEval overall;
  std::map<std::string, GroupEval> per_language;
  std::vector<PageEval> pages;

  ordered_json to_json() const;
};

// Every question of every page is ranked against that page's answers only.
EvalReport evaluate(std::span<const FaqPage> pages, const Scorer& scorer, unsigned threads = 1);

EvalReport random_baseline(std::span<const FaqPage> pages, std::uint64_t seed, unsigned threads = 1);

void write_report(const EvalReport& report, const std::filesystem::path& path);

// ---- cross-lingual query substitution -----------------------------------

using QueryMap = std::map<std::pair<std::string, std::size_t>, std::string>;

// JSON Lines {"page", "index", "text"}.
QueryMap read_query_map(const std::filesystem::path& path);

// Replaces question texts (answers untouched). In strict mode every pair of
// every page must be mapped.
std::vector<FaqPage> substitute_queries(std::span<const FaqPage> pages, const QueryMap& map, bool strict = false);

// ---- probing ------------------------------------------------------------

struct RankedAnswer {
  std::size_t index = 0;
  double score = 0.0;
  std::string answer;
};

// Answers by descending score, ties in page order.
std::vector<RankedAnswer> rank_answers(std::string_view query, const FaqPage& page, const Scorer& scorer);

}  // namespace faqkit
