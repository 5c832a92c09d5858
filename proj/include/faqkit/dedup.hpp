#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/json_line.hpp"

namespace faqkit {

// Hashed 3-token windows of a page, sorted and unique.
struct ShingleSet {
  std::string page_id;
  std::vector<std::uint64_t> shingles;
};

struct MinHashSignature {
  std::string page_id;
  std::vector<std::uint64_t> values;
};

struct LshConfig {
  std::size_t bands = 20;
  std::size_t rows = 5;
  double jaccard_threshold = 0.75;
  std::size_t signature_length = 100;

  // Throws ConfigError unless bands * rows == signature_length and all are positive.
  void validate() const;
};

inline constexpr std::size_t kShingleWidth = 3;
inline constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

// Questions and answers joined by single spaces, lowercased, NFC.
std::string shingle_text(const FaqPage& page);

// Window strings of `tokens` (one whole-text window when shorter than three tokens).
std::vector<std::string> shingle_windows(std::span<const std::string> tokens);

ShingleSet shingle(const FaqPage& page);

// Universal hash family h_i(x) = (a_i * x + b_i) mod (2^61 - 1), with
// (a_i, b_i) drawn from splitmix64(seed), a_i != 0.
class MinHasher {
 public:
  MinHasher(std::size_t signature_length, std::uint64_t seed);

  std::uint64_t hash(std::size_t i, std::uint64_t x) const;
  MinHashSignature sign(const ShingleSet& set) const;
  std::size_t size() const { return a_.size(); }

 private:
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

MinHashSignature minhash(const ShingleSet& set, std::size_t signature_length, std::uint64_t seed);

// Fraction of agreeing signature positions.
double estimated_jaccard(const MinHashSignature& a, const MinHashSignature& b);
// |A ∩ B| / |A ∪ B| over sorted unique vectors; 1 for two empty sets.
double exact_jaccard(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
// 1 - (1 - s^rows)^bands.
double candidate_probability(double similarity, std::size_t rows, std::size_t bands);

// Indices (i < j) into the signature list, sorted, each pair once.
using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

std::vector<IndexPair> lsh_candidate_indices(std::span<const MinHashSignature> signatures,
                                             const LshConfig& config, unsigned threads = 1);

// Same candidates keyed by page id, each pair ordered (smaller id first).
std::vector<std::pair<std::string, std::string>> lsh_candidates(
    std::span<const MinHashSignature> signatures, const LshConfig& config, unsigned threads = 1);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t x, std::size_t y);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::uint8_t> rank_;
};

struct VerifiedEdge {
  std::string a;
  std::string b;
  double jaccard = 0.0;
};

struct DuplicateClusters {
  // Every input page appears in exactly one component (singletons included);
  // components ordered by their first page, members in page order.
  std::vector<std::vector<std::string>> components;
  // survivors[k] belongs to components[k].
  std::vector<std::string> survivors;
};

// Keeps candidate edges with exact Jaccard >= threshold, unions them, and
// picks one survivor per component: most pairs, then smallest url, then
// smallest page id. `shingle_sets[i]` must describe `pages[i]`.
DuplicateClusters verify_and_cluster(std::span<const std::pair<std::string, std::string>> candidates,
                                     std::span<const ShingleSet> shingle_sets,
                                     std::span<const FaqPage> pages, double threshold,
                                     std::vector<VerifiedEdge>* edges = nullptr);

struct DedupReport {
  std::size_t pages_before = 0;
  std::size_t pages_after = 0;
  // Components holding more than one page.
  std::size_t components = 0;
  // component size -> number of components (singletons included)
  std::map<std::size_t, std::size_t> size_histogram;
  std::uint64_t seed = 0;
  LshConfig config;

  ordered_json to_json() const;
};

struct DedupResult {
  Corpus corpus;
  DedupReport report;
  DuplicateClusters clusters;
  std::vector<VerifiedEdge> edges;
};

inline constexpr std::uint64_t kDefaultDedupSeed = 42;

// shingle -> minhash -> LSH -> verify/cluster; survivors keep corpus order.
DedupResult dedup_corpus(const Corpus& corpus, const LshConfig& config,
                         std::uint64_t seed = kDefaultDedupSeed, unsigned threads = 1);

}  // namespace faqkit
