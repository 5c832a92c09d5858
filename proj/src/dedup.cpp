#include "faqkit/dedup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "faqkit/error.hpp"
#include "faqkit/parallel.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/text.hpp"

namespace faqkit {
namespace {

std::uint64_t mod_mersenne(unsigned __int128 v) {
  std::uint64_t r = static_cast<std::uint64_t>(v & kMersenne61) + static_cast<std::uint64_t>(v >> 61);
  r = (r & kMersenne61) + (r >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

struct SliceHash {
  std::size_t operator()(std::span<const std::uint64_t> slice) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : slice)
      for (int byte = 0; byte < 8; ++byte) {
        h ^= (v >> (8 * byte)) & 0xff;
        h *= 0x100000001b3ULL;
      }
    return static_cast<std::size_t>(h);
  }
};

struct SliceEq {
  bool operator()(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) const {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace

void LshConfig::validate() const {
  if (bands == 0 || rows == 0 || signature_length == 0)
    throw ConfigError("LSH bands, rows and signature length must be positive");
  if (bands * rows != signature_length)
    throw ConfigError("LSH bands x rows (" + std::to_string(bands) + " x " + std::to_string(rows) +
                      ") must equal the signature length " + std::to_string(signature_length));
  if (!(jaccard_threshold >= 0.0 && jaccard_threshold <= 1.0))
    throw ConfigError("Jaccard threshold must lie in [0, 1]");
}

std::string shingle_text(const FaqPage& page) {
  std::string joined;
  for (const auto& p : page.pairs) {
    if (!joined.empty()) joined += ' ';
    joined += p.question;
    joined += ' ';
    joined += p.answer;
  }
  return text::nfc(text::lowercase(joined));
}

std::vector<std::string> shingle_windows(std::span<const std::string> tokens) {
  std::vector<std::string> windows;
  if (tokens.empty()) return windows;
  const auto join = [&](std::size_t from, std::size_t count) {
    std::string w = tokens[from];
    for (std::size_t k = 1; k < count; ++k) {
      w += ' ';
      w += tokens[from + k];
    }
    return w;
  };
  if (tokens.size() < kShingleWidth) {
    windows.push_back(join(0, tokens.size()));
    return windows;
  }
  windows.reserve(tokens.size() - kShingleWidth + 1);
  for (std::size_t i = 0; i + kShingleWidth <= tokens.size(); ++i) windows.push_back(join(i, kShingleWidth));
  return windows;
}

ShingleSet shingle(const FaqPage& page) {
  const auto tokens = text::split_whitespace(shingle_text(page));
  ShingleSet set{page.page_id, {}};
  for (const auto& w : shingle_windows(tokens)) set.shingles.push_back(text::fnv1a64(w));
  std::sort(set.shingles.begin(), set.shingles.end());
  set.shingles.erase(std::unique(set.shingles.begin(), set.shingles.end()), set.shingles.end());
  return set;
}

MinHasher::MinHasher(std::size_t signature_length, std::uint64_t seed) {
  if (signature_length == 0) throw ConfigError("signature length must be positive");
  SplitMix64 rng(seed);
  a_.reserve(signature_length);
  b_.reserve(signature_length);
  for (std::size_t i = 0; i < signature_length; ++i) {
    a_.push_back(1 + rng.below(kMersenne61 - 1));
    b_.push_back(rng.below(kMersenne61));
  }
}

std::uint64_t MinHasher::hash(std::size_t i, std::uint64_t x) const {
  const std::uint64_t xr = mod_mersenne(x);
  return mod_mersenne(static_cast<unsigned __int128>(a_[i]) * xr + b_[i]);
}

MinHashSignature MinHasher::sign(const ShingleSet& set) const {
  if (set.shingles.empty()) throw DataError("cannot sign empty shingle set for page " + set.page_id);
  MinHashSignature sig{set.page_id, std::vector<std::uint64_t>(a_.size(), UINT64_MAX)};
  for (std::uint64_t x : set.shingles) {
    const std::uint64_t xr = mod_mersenne(x);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const std::uint64_t h = mod_mersenne(static_cast<unsigned __int128>(a_[i]) * xr + b_[i]);
      sig.values[i] = std::min(sig.values[i], h);
    }
  }
  return sig;
}

MinHashSignature minhash(const ShingleSet& set, std::size_t signature_length, std::uint64_t seed) {
  return MinHasher(signature_length, seed).sign(set);
}

double estimated_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
  if (a.values.size() != b.values.size() || a.values.empty())
    throw DataError("signature length mismatch");
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) agree += a.values[i] == b.values[i];
  return static_cast<double>(agree) / static_cast<double>(a.values.size());
}

double exact_jaccard(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t i = 0, j = 0, common = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double candidate_probability(double similarity, std::size_t rows, std::size_t bands) {
  return 1.0 - std::pow(1.0 - std::pow(similarity, static_cast<double>(rows)), static_cast<double>(bands));
}

std::vector<IndexPair> lsh_candidate_indices(std::span<const MinHashSignature> signatures,
                                             const LshConfig& config, unsigned threads) {
  config.validate();
  for (const auto& s : signatures)
    if (s.values.size() != config.signature_length)
      throw DataError("signature for page " + s.page_id + " has length " + std::to_string(s.values.size()) +
                      ", expected " + std::to_string(config.signature_length));

  std::vector<std::vector<IndexPair>> per_band(config.bands);
  parallel_for(config.bands, threads, [&](std::size_t band) {
    std::unordered_map<std::span<const std::uint64_t>, std::vector<std::uint32_t>, SliceHash, SliceEq> buckets;
    for (std::size_t i = 0; i < signatures.size(); ++i) {
      const std::span<const std::uint64_t> slice(signatures[i].values.data() + band * config.rows, config.rows);
      buckets[slice].push_back(static_cast<std::uint32_t>(i));
    }
    auto& out = per_band[band];
    for (const auto& [slice, members] : buckets)
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) out.emplace_back(members[x], members[y]);
  });
  std::vector<IndexPair> pairs;
  for (auto& band : per_band) pairs.insert(pairs.end(), band.begin(), band.end());
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<std::pair<std::string, std::string>> lsh_candidates(std::span<const MinHashSignature> signatures,
                                                                const LshConfig& config, unsigned threads) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [i, j] : lsh_candidate_indices(signatures, config, threads)) {
    const auto& a = signatures[i].page_id;
    const auto& b = signatures[j].page_id;
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (rank_[x] < rank_[y]) std::swap(x, y);
  parent_[y] = x;
  if (rank_[x] == rank_[y]) ++rank_[x];
  return true;
}

DuplicateClusters verify_and_cluster(std::span<const std::pair<std::string, std::string>> candidates,
                                     std::span<const ShingleSet> shingle_sets,
                                     std::span<const FaqPage> pages, double threshold,
                                     std::vector<VerifiedEdge>* edges) {
  if (shingle_sets.size() != pages.size()) throw DataError("shingle sets and pages differ in count");
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (shingle_sets[i].page_id != pages[i].page_id) throw DataError("shingle set order does not match pages");
    index.emplace(pages[i].page_id, i);
  }
  const auto lookup = [&](const std::string& id) {
    const auto it = index.find(id);
    if (it == index.end()) throw DataError("candidate page " + id + " has no shingle set");
    return it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> kept;
  for (const auto& [a, b] : candidates) {
    std::size_t i = lookup(a), j = lookup(b);
    if (i > j) std::swap(i, j);
    const double jac = exact_jaccard(shingle_sets[i].shingles, shingle_sets[j].shingles);
    if (jac >= threshold) {
      kept.emplace_back(i, j);
      if (edges) edges->push_back({pages[i].page_id, pages[j].page_id, jac});
    }
  }
  std::sort(kept.begin(), kept.end());
  UnionFind uf(pages.size());
  for (const auto& [i, j] : kept) uf.unite(i, j);

  std::vector<std::size_t> slot(pages.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    const std::size_t root = uf.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = groups.size();
      groups.emplace_back();
    }
    groups[slot[root]].push_back(i);
  }

  const auto better = [&](std::size_t x, std::size_t y) {
    const auto& p = pages[x];
    const auto& q = pages[y];
    if (p.pairs.size() != q.pairs.size()) return p.pairs.size() > q.pairs.size();
    if (p.url != q.url) return p.url < q.url;
    return p.page_id < q.page_id;
  };
  DuplicateClusters clusters;
  for (const auto& g : groups) {
    std::vector<std::string> ids;
    ids.reserve(g.size());
    for (std::size_t i : g) ids.push_back(pages[i].page_id);
    clusters.components.push_back(std::move(ids));
    clusters.survivors.push_back(pages[*std::min_element(g.begin(), g.end(), better)].page_id);
  }
  return clusters;
}

ordered_json DedupReport::to_json() const {
  ordered_json j;
  j["pages_before"] = pages_before;
  j["pages_after"] = pages_after;
  j["components"] = components;
  ordered_json hist = ordered_json::object();
  for (const auto& [size, count] : size_histogram) hist[std::to_string(size)] = count;
  j["size_histogram"] = hist;
  j["seed"] = seed;
  j["config"] = {{"signature_length", config.signature_length},
                 {"bands", config.bands},
                 {"rows", config.rows},
                 {"jaccard_threshold", config.jaccard_threshold}};
  return j;
}

DedupResult dedup_corpus(const Corpus& corpus, const LshConfig& config, std::uint64_t seed, unsigned threads) {
  config.validate();
  const auto& pages = corpus.pages();
  const MinHasher hasher(config.signature_length, seed);
  std::vector<ShingleSet> sets(pages.size());
  std::vector<MinHashSignature> signatures(pages.size());
  parallel_for(pages.size(), threads, [&](std::size_t i) {
    sets[i] = shingle(pages[i]);
    signatures[i] = hasher.sign(sets[i]);
  });

  DedupResult result;
  const auto candidates = lsh_candidates(signatures, config, threads);
  result.clusters = verify_and_cluster(candidates, sets, pages, config.jaccard_threshold, &result.edges);

  std::unordered_map<std::string, bool> keep;
  for (const auto& id : result.clusters.survivors) keep[id] = true;
  std::vector<FaqPage> survivors;
  for (const auto& p : pages)
    if (keep.contains(p.page_id)) survivors.push_back(p);

  auto& report = result.report;
  report.pages_before = pages.size();
  report.pages_after = survivors.size();
  for (const auto& c : result.clusters.components) {
    ++report.size_histogram[c.size()];
    if (c.size() > 1) ++report.components;
  }
  report.seed = seed;
  report.config = config;
  result.corpus = Corpus(std::move(survivors));
  return result;
}

}  // namespace faqkit
