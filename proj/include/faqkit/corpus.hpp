#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace faqkit {

struct FaqPair {
  std::string question;
  std::string answer;

  friend bool operator==(const FaqPair&, const FaqPair&) = default;
};

// All pairs sharing one (source URL, language).
struct FaqPage {
  std::string page_id;
  std::string url;
  std::string root_domain;
  std::string language;
  std::vector<FaqPair> pairs;

  std::size_t size() const { return pairs.size(); }
  friend bool operator==(const FaqPage&, const FaqPage&) = default;
};

struct LanguageTally {
  std::size_t pairs = 0;
  std::size_t pages = 0;
  std::size_t domains = 0;

  friend bool operator==(const LanguageTally&, const LanguageTally&) = default;
};

using Tallies = std::map<std::string, LanguageTally>;

// Lowercase hex FNV-1a-64 of url + "\n" + language.
std::string make_page_id(std::string_view url, std::string_view language);

// Builds a page with derived id and root domain filled in.
FaqPage make_page(std::string url, std::string language, std::vector<FaqPair> pairs);

Tallies compute_tallies(std::span<const FaqPage> pages);

// Immutable collection of pages in a fixed order. Construction enforces the
// (url, language) uniqueness and non-empty-page invariants.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<FaqPage> pages);

  const std::vector<FaqPage>& pages() const { return pages_; }
  const Tallies& tallies() const { return tallies_; }
  std::size_t size() const { return pages_.size(); }
  bool empty() const { return pages_.empty(); }
  std::size_t pair_count() const;

  // nullptr when absent.
  const FaqPage* find(std::string_view page_id) const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.pages_ == b.pages_; }

 private:
  std::vector<FaqPage> pages_;
  Tallies tallies_;
  std::map<std::string, std::size_t, std::less<>> by_id_;
};

Corpus parse_corpus(std::istream& in);
Corpus read_corpus(const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, std::ostream& out);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace faqkit
