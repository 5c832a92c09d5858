#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/json_line.hpp"

namespace faqkit {

struct SplitConfig {
  double validation_fraction = 0.10;
  std::size_t max_pages_per_domain_in_validation = 3;
  bool one_page_per_domain_training = true;

  void validate() const;
};

struct LanguageSplit {
  std::size_t total_pairs = 0;
  double target_pairs = 0.0;
  std::size_t achieved_pairs = 0;
  std::size_t validation_pages = 0;
  std::size_t training_pages = 0;
  // True when every eligible candidate was taken or capped before the target.
  bool exhausted = false;
};

// Validation, training and excluded page ids partition the corpus. Excluded
// pages are those removed from training because their domain appears in
// validation or because of the one-page-per-domain training subset.
struct SplitManifest {
  SplitConfig config;
  std::uint64_t seed = 0;
  std::vector<std::string> validation;
  std::vector<std::string> training;
  std::vector<std::string> excluded;
  std::map<std::string, LanguageSplit> per_language;
  std::vector<std::string> warnings;

  ordered_json to_json() const;
  static SplitManifest from_json(const nlohmann::json& j);
};

// Large-pages-first greedy selection per language with a per-domain cap,
// single-language-domain eligibility, and no root domain shared between
// validation and training. Deterministic; `seed` is recorded only.
SplitManifest build_split(const Corpus& corpus, const SplitConfig& config, std::uint64_t seed = 0);

void write_manifest(const SplitManifest& manifest, const std::filesystem::path& path);
SplitManifest read_manifest(const std::filesystem::path& path);

// Pages of `corpus` whose ids are listed, in corpus order.
std::vector<FaqPage> select_pages(const Corpus& corpus, std::span<const std::string> ids);

struct HistogramBin {
  std::string label;  // "5", "10", ..., "30", "30+"
  std::size_t pages = 0;
  double percent = 0.0;
};

// Share of pages per pairs-per-page bin of width 5, last bin "30+".
// Empty input yields an empty histogram.
std::vector<HistogramBin> pairs_per_page_histogram(std::span<const FaqPage> pages);
std::vector<HistogramBin> pairs_per_page_histogram(std::span<const std::size_t> sizes);

}  // namespace faqkit
