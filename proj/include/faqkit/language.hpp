#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace faqkit {

struct LanguageTag {
  std::string code;  // configured language or "und"
  double confidence = 0.0;

  friend bool operator==(const LanguageTag&, const LanguageTag&) = default;
};

inline constexpr std::string_view kUndetermined = "und";

// Rank-ordered character n-gram profile (n = 1..4 over letter runs padded
// with '_'), most frequent first, ties broken by byte order of the n-gram.
class NgramProfile {
 public:
  NgramProfile() = default;
  explicit NgramProfile(std::vector<std::string> ranked);

  static NgramProfile from_text(std::string_view text, std::size_t top = 300);

  const std::vector<std::string>& ngrams() const { return ranked_; }
  std::size_t size() const { return ranked_.size(); }
  bool empty() const { return ranked_.empty(); }
  std::optional<std::size_t> rank_of(const std::string& ngram) const;

 private:
  std::vector<std::string> ranked_;
  std::unordered_map<std::string, std::size_t> rank_;
};

// Every n-gram (with multiplicity) the profile is built from; exposed for tests.
std::vector<std::string> letter_ngrams(std::string_view text);

// Out-of-place distance: sum over document n-grams of |rank difference|,
// with `max_penalty` for n-grams absent from the language profile.
std::size_t out_of_place_distance(const NgramProfile& document, const NgramProfile& language,
                                  std::size_t max_penalty);

// (url, pair_index) -> language code, from a pass-through map file.
using LanguageMap = std::map<std::pair<std::string, std::size_t>, std::string>;
LanguageMap read_language_map(const std::filesystem::path& path);

struct ClassifierOptions {
  double threshold = 0.5;
  std::size_t profile_size = 300;
};

class LanguageClassifier {
 public:
  // Profiles built from the embedded sample texts.
  static LanguageClassifier builtin(ClassifierOptions options = {});
  static LanguageClassifier from_profiles(std::map<std::string, NgramProfile> profiles,
                                          ClassifierOptions options = {});
  static LanguageClassifier from_samples(const std::map<std::string, std::string>& samples,
                                         ClassifierOptions options = {});
  static LanguageClassifier from_profile_file(const std::filesystem::path& path,
                                              ClassifierOptions options = {});
  // Pass-through only; pairs missing from the map are "und".
  static LanguageClassifier passthrough(LanguageMap map);

  LanguageClassifier& set_passthrough(LanguageMap map);

  // Profile-based classification; throws ConfigError without profiles.
  LanguageTag classify(std::string_view text) const;
  // Pass-through entry when present (confidence 1), else profiles over
  // question + " " + answer, else "und".
  LanguageTag classify_pair(std::string_view question, std::string_view answer,
                            const std::string& url, std::size_t pair_index) const;

  const std::map<std::string, NgramProfile>& profiles() const { return profiles_; }
  const ClassifierOptions& options() const { return options_; }
  void save_profiles(const std::filesystem::path& path) const;

 private:
  std::map<std::string, NgramProfile> profiles_;
  std::optional<LanguageMap> passthrough_;
  ClassifierOptions options_;
};

// Sample text per language used for the built-in profiles.
const std::map<std::string, std::string>& builtin_language_samples();

}  // namespace faqkit
