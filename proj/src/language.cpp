#include "faqkit/language.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "faqkit/error.hpp"
#include "faqkit/text.hpp"

namespace faqkit {

std::vector<std::string> letter_ngrams(std::string_view text_utf8) {
  const std::u32string cps = text::to_utf32(text::lowercase(text_utf8));
  std::vector<std::string> grams;
  std::u32string token;
  const auto flush = [&] {
    if (token.empty()) return;
    const std::u32string padded = U"_" + token + U"_";
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::size_t i = 0; i + n <= padded.size(); ++i) {
        const std::u32string_view g(padded.data() + i, n);
        if (g == U"_") continue;
        grams.push_back(text::to_utf8(g));
      }
    }
    token.clear();
  };
  for (char32_t c : cps) {
    if (text::is_letter(c))
      token.push_back(c);
    else
      flush();
  }
  flush();
  return grams;
}

NgramProfile::NgramProfile(std::vector<std::string> ranked) : ranked_(std::move(ranked)) {
  for (std::size_t i = 0; i < ranked_.size(); ++i) rank_.emplace(ranked_[i], i);
}

NgramProfile NgramProfile::from_text(std::string_view text_utf8, std::size_t top) {
  std::unordered_map<std::string, std::size_t> counts;
  for (auto& g : letter_ngrams(text_utf8)) ++counts[std::move(g)];
  std::vector<std::pair<std::string, std::size_t>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (items.size() > top) items.resize(top);
  std::vector<std::string> ranked;
  ranked.reserve(items.size());
  for (auto& [g, c] : items) ranked.push_back(std::move(g));
  return NgramProfile(std::move(ranked));
}

std::optional<std::size_t> NgramProfile::rank_of(const std::string& ngram) const {
  const auto it = rank_.find(ngram);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

std::size_t out_of_place_distance(const NgramProfile& document, const NgramProfile& language,
                                  std::size_t max_penalty) {
  std::size_t distance = 0;
  for (std::size_t i = 0; i < document.size(); ++i) {
    const auto r = language.rank_of(document.ngrams()[i]);
    distance += r ? (*r > i ? *r - i : i - *r) : max_penalty;
  }
  return distance;
}

LanguageMap read_language_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open language map " + path.string());
  LanguageMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      const auto obj = nlohmann::json::parse(line);
      map[{obj.at("url").get<std::string>(), obj.at("pair_index").get<std::size_t>()}] =
          obj.at("language").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError("language map line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return map;
}

LanguageClassifier LanguageClassifier::from_profiles(std::map<std::string, NgramProfile> profiles,
                                                     ClassifierOptions options) {
  LanguageClassifier c;
  c.profiles_ = std::move(profiles);
  c.options_ = options;
  return c;
}

LanguageClassifier LanguageClassifier::from_samples(const std::map<std::string, std::string>& samples,
                                                    ClassifierOptions options) {
  std::map<std::string, NgramProfile> profiles;
  for (const auto& [code, sample] : samples)
    profiles.emplace(code, NgramProfile::from_text(sample, options.profile_size));
  return from_profiles(std::move(profiles), options);
}

LanguageClassifier LanguageClassifier::builtin(ClassifierOptions options) {
  return from_samples(builtin_language_samples(), options);
}

LanguageClassifier LanguageClassifier::from_profile_file(const std::filesystem::path& path,
                                                         ClassifierOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open profile file " + path.string());
  std::map<std::string, NgramProfile> profiles;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& [code, grams] : doc.items())
      profiles.emplace(code, NgramProfile(grams.get<std::vector<std::string>>()));
  } catch (const nlohmann::json::exception& e) {
    throw DataError("profile file " + path.string() + ": " + e.what());
  }
  return from_profiles(std::move(profiles), options);
}

LanguageClassifier LanguageClassifier::passthrough(LanguageMap map) {
  LanguageClassifier c;
  c.passthrough_ = std::move(map);
  return c;
}

LanguageClassifier& LanguageClassifier::set_passthrough(LanguageMap map) {
  passthrough_ = std::move(map);
  return *this;
}

LanguageTag LanguageClassifier::classify(std::string_view text_utf8) const {
  if (profiles_.empty()) throw ConfigError("language classifier has no profiles");
  const NgramProfile document = NgramProfile::from_text(text_utf8, options_.profile_size);
  if (document.empty()) return {std::string(kUndetermined), 0.0};
  const std::size_t penalty = options_.profile_size;
  const double max_distance = static_cast<double>(document.size() * penalty);
  const std::string* best = nullptr;
  std::size_t best_distance = 0;
  for (const auto& [code, profile] : profiles_) {  // map order breaks ties by code
    const std::size_t d = out_of_place_distance(document, profile, penalty);
    if (!best || d < best_distance) {
      best = &code;
      best_distance = d;
    }
  }
  const double confidence = 1.0 - static_cast<double>(best_distance) / max_distance;
  if (confidence < options_.threshold) return {std::string(kUndetermined), confidence};
  return {*best, confidence};
}

LanguageTag LanguageClassifier::classify_pair(std::string_view question, std::string_view answer,
                                              const std::string& url, std::size_t pair_index) const {
  if (passthrough_) {
    if (const auto it = passthrough_->find({url, pair_index}); it != passthrough_->end())
      return {it->second, 1.0};
    if (profiles_.empty()) return {std::string(kUndetermined), 0.0};
  }
  std::string joined(question);
  joined += ' ';
  joined += answer;
  return classify(joined);
}

void LanguageClassifier::save_profiles(const std::filesystem::path& path) const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const auto& [code, profile] : profiles_) doc[code] = profile.ngrams();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write profile file " + path.string());
  out << doc.dump(1) << '\n';
}

}  // namespace faqkit
