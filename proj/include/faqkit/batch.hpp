#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "faqkit/corpus.hpp"

namespace faqkit {

inline constexpr std::string_view kQuestionToken = "<question>";
inline constexpr std::string_view kAnswerToken = "<answer>";
inline constexpr std::size_t kDefaultBatchCapacity = 800;
inline constexpr std::uint64_t kDefaultBatchSeed = 7;

struct BatchEntry {
  std::string page_id;
  std::size_t pair_index = 0;
  std::string question;
  std::string answer;

  friend bool operator==(const BatchEntry&, const BatchEntry&) = default;
};

struct TrainingBatch {
  std::string language;
  std::vector<BatchEntry> entries;
  std::size_t capacity = 0;
  // Fewer entries than capacity.
  bool partial = false;

  std::size_t size() const { return entries.size(); }
  friend bool operator==(const TrainingBatch&, const TrainingBatch&) = default;
};

struct BatchOptions {
  std::size_t capacity = kDefaultBatchCapacity;
  std::uint64_t seed = kDefaultBatchSeed;
  // false keeps input page order within each language.
  bool shuffle = true;
};

// Monolingual batches where each page's pairs are appended whole and
// contiguously. A page that does not fit closes the current batch; a page
// larger than capacity is split across consecutive batches. Languages are
// emitted in sorted order.
std::vector<TrainingBatch> build_batches(std::span<const FaqPage> pages, const BatchOptions& options = {});

// ("<question> " + question, "<answer> " + answer). Throws DataError when an
// input already carries its marker.
std::pair<std::string, std::string> render_entry(std::string_view question, std::string_view answer);

// JSON Lines: {"language", "partial", "entries": [{"page", "index", "q", "a"}]}
// with rendered q/a texts.
void write_batches(std::span<const TrainingBatch> batches, const std::filesystem::path& path);
std::vector<TrainingBatch> read_batches(const std::filesystem::path& path);

}  // namespace faqkit
