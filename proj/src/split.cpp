#include "faqkit/split.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "faqkit/error.hpp"

namespace faqkit {

void SplitConfig::validate() const {
  if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
    throw ConfigError("validation fraction must lie strictly between 0 and 1");
  if (max_pages_per_domain_in_validation == 0)
    throw ConfigError("max pages per domain in validation must be positive");
}

SplitManifest build_split(const Corpus& corpus, const SplitConfig& config, std::uint64_t seed) {
  config.validate();
  const auto& pages = corpus.pages();

  std::unordered_map<std::string, std::set<std::string>> domain_languages;
  for (const auto& p : pages) domain_languages[p.root_domain].insert(p.language);

  std::map<std::string, std::vector<std::size_t>> by_language;
  for (std::size_t i = 0; i < pages.size(); ++i) by_language[pages[i].language].push_back(i);

  SplitManifest manifest;
  manifest.config = config;
  manifest.seed = seed;
  std::vector<char> in_validation(pages.size(), 0);
  std::unordered_set<std::string> validation_domains;

  for (const auto& [language, members] : by_language) {
    LanguageSplit stats;
    for (std::size_t i : members) stats.total_pairs += pages[i].pairs.size();
    stats.target_pairs = config.validation_fraction * static_cast<double>(stats.total_pairs);

    std::vector<std::size_t> candidates;
    for (std::size_t i : members)
      if (domain_languages[pages[i].root_domain].size() == 1) candidates.push_back(i);
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      if (pages[a].pairs.size() != pages[b].pairs.size()) return pages[a].pairs.size() > pages[b].pairs.size();
      return pages[a].page_id < pages[b].page_id;
    });

    std::unordered_map<std::string, std::size_t> taken_per_domain;
    stats.exhausted = true;
    for (std::size_t i : candidates) {
      if (static_cast<double>(stats.achieved_pairs) >= stats.target_pairs) {
        stats.exhausted = false;
        break;
      }
      auto& taken = taken_per_domain[pages[i].root_domain];
      if (taken >= config.max_pages_per_domain_in_validation) continue;
      ++taken;
      in_validation[i] = 1;
      stats.achieved_pairs += pages[i].pairs.size();
      ++stats.validation_pages;
      validation_domains.insert(pages[i].root_domain);
    }
    if (stats.exhausted && static_cast<double>(stats.achieved_pairs) >= stats.target_pairs) stats.exhausted = false;
    if (static_cast<double>(stats.achieved_pairs) < 0.01 * stats.target_pairs)
      manifest.warnings.push_back("language " + language + ": eligible validation candidates reach only " +
                                  std::to_string(stats.achieved_pairs) + " of " +
                                  std::to_string(stats.target_pairs) + " target pairs");
    manifest.per_language[language] = stats;
  }

  // Training: pages outside validation whose domain never reached validation.
  std::vector<char> in_training(pages.size(), 0);
  for (std::size_t i = 0; i < pages.size(); ++i)
    in_training[i] = !in_validation[i] && !validation_domains.contains(pages[i].root_domain);

  if (config.one_page_per_domain_training) {
    std::map<std::pair<std::string, std::string>, std::size_t> best;
    for (std::size_t i = 0; i < pages.size(); ++i) {
      if (!in_training[i]) continue;
      const auto key = std::pair{pages[i].root_domain, pages[i].language};
      const auto it = best.find(key);
      if (it == best.end()) {
        best.emplace(key, i);
        continue;
      }
      const auto& cur = pages[it->second];
      if (pages[i].pairs.size() > cur.pairs.size() ||
          (pages[i].pairs.size() == cur.pairs.size() && pages[i].page_id < cur.page_id))
        it->second = i;
    }
    std::fill(in_training.begin(), in_training.end(), 0);
    for (const auto& [key, i] : best) in_training[i] = 1;
  }

  for (std::size_t i = 0; i < pages.size(); ++i) {
    if (in_validation[i]) {
      manifest.validation.push_back(pages[i].page_id);
    } else if (in_training[i]) {
      manifest.training.push_back(pages[i].page_id);
      ++manifest.per_language[pages[i].language].training_pages;
    } else {
      manifest.excluded.push_back(pages[i].page_id);
    }
  }
  return manifest;
}

ordered_json SplitManifest::to_json() const {
  ordered_json j;
  j["config"] = {{"validation_fraction", config.validation_fraction},
                 {"max_pages_per_domain_in_validation", config.max_pages_per_domain_in_validation},
                 {"one_page_per_domain_training", config.one_page_per_domain_training},
                 {"seed", seed}};
  j["validation"] = validation;
  j["training"] = training;
  j["excluded"] = excluded;
  ordered_json langs = ordered_json::object();
  for (const auto& [lang, s] : per_language) {
    langs[lang] = {{"target_pairs", s.target_pairs},
                   {"achieved_pairs", s.achieved_pairs},
                   {"total_pairs", s.total_pairs},
                   {"achieved_fraction", s.total_pairs ? static_cast<double>(s.achieved_pairs) /
                                                             static_cast<double>(s.total_pairs)
                                                       : 0.0},
                   {"validation_pages", s.validation_pages},
                   {"training_pages", s.training_pages},
                   {"exhausted", s.exhausted}};
  }
  j["per_language"] = langs;
  j["warnings"] = warnings;
  return j;
}

SplitManifest SplitManifest::from_json(const nlohmann::json& j) {
  SplitManifest m;
  try {
    const auto& c = j.at("config");
    m.config.validation_fraction = c.at("validation_fraction").get<double>();
    m.config.max_pages_per_domain_in_validation = c.at("max_pages_per_domain_in_validation").get<std::size_t>();
    m.config.one_page_per_domain_training = c.at("one_page_per_domain_training").get<bool>();
    m.seed = c.value("seed", std::uint64_t{0});
    m.validation = j.at("validation").get<std::vector<std::string>>();
    m.training = j.at("training").get<std::vector<std::string>>();
    m.excluded = j.value("excluded", std::vector<std::string>{});
    for (const auto& [lang, s] : j.at("per_language").items()) {
      LanguageSplit ls;
      ls.target_pairs = s.at("target_pairs").get<double>();
      ls.achieved_pairs = s.at("achieved_pairs").get<std::size_t>();
      ls.total_pairs = s.value("total_pairs", std::size_t{0});
      ls.validation_pages = s.value("validation_pages", std::size_t{0});
      ls.training_pages = s.value("training_pages", std::size_t{0});
      ls.exhausted = s.value("exhausted", false);
      m.per_language[lang] = ls;
    }
    m.warnings = j.value("warnings", std::vector<std::string>{});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed split manifest: ") + e.what());
  }
  return m;
}

void write_manifest(const SplitManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << manifest.to_json().dump(2) << '\n';
}

SplitManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  try {
    return SplitManifest::from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("manifest " + path.string() + ": " + e.what());
  }
}

std::vector<FaqPage> select_pages(const Corpus& corpus, std::span<const std::string> ids) {
  std::unordered_set<std::string> wanted(ids.begin(), ids.end());
  for (const auto& id : wanted)
    if (!corpus.find(id)) throw DataError("page id " + id + " is not in the corpus");
  std::vector<FaqPage> out;
  for (const auto& p : corpus.pages())
    if (wanted.contains(p.page_id)) out.push_back(p);
  return out;
}

std::vector<HistogramBin> pairs_per_page_histogram(std::span<const std::size_t> sizes) {
  std::vector<HistogramBin> bins;
  if (sizes.empty()) return bins;
  for (int edge = 5; edge <= 30; edge += 5) bins.push_back({std::to_string(edge), 0, 0.0});
  bins.push_back({"30+", 0, 0.0});
  for (std::size_t s : sizes) {
    const std::size_t bin = s > 30 ? 6 : (s == 0 ? 0 : (s - 1) / 5);
    ++bins[bin].pages;
  }
  for (auto& b : bins) b.percent = 100.0 * static_cast<double>(b.pages) / static_cast<double>(sizes.size());
  return bins;
}

std::vector<HistogramBin> pairs_per_page_histogram(std::span<const FaqPage> pages) {
  std::vector<std::size_t> sizes;
  sizes.reserve(pages.size());
  for (const auto& p : pages) sizes.push_back(p.pairs.size());
  return pairs_per_page_histogram(std::span<const std::size_t>(sizes));
}

}  // namespace faqkit
