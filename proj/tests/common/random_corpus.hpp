#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/split.hpp"

namespace faqkit::testing {

// Random corpus over a handful of root domains; some domains span several
// languages, page sizes are heavy-tailed.
inline Corpus random_corpus(std::uint64_t seed) {
  SplitMix64 g(seed);
  static const char* langs[] = {"en", "fr", "de", "es"};
  static const char* suffixes[] = {"com", "fr", "de", "co.uk", "es"};
  const std::size_t domains = 3 + g.below(20);
  std::vector<FaqPage> pages;
  std::set<std::string> ids;
  for (std::size_t d = 0; d < domains; ++d) {
    const std::string name = "dom" + std::to_string(d);
    const std::size_t n_pages = 1 + g.below(8);
    const bool multi = g.uniform() < 0.25;
    const std::string home = langs[g.below(4)];
    for (std::size_t p = 0; p < n_pages; ++p) {
      const std::string lang = multi ? langs[g.below(4)] : home;
      const std::string url = "https://s" + std::to_string(g.below(3)) + "." + name + "." + suffixes[g.below(5)] +
                              "/p" + std::to_string(p);
      std::size_t size = 1 + g.below(6);
      if (g.uniform() < 0.2) size += g.below(40);
      std::vector<FaqPair> pairs;
      for (std::size_t k = 0; k < size; ++k)
        pairs.push_back({"q" + std::to_string(k) + "?", "a" + std::to_string(k)});
      FaqPage page = make_page(url, lang, std::move(pairs));
      if (ids.insert(page.page_id).second) pages.push_back(std::move(page));
    }
  }
  return Corpus(std::move(pages));
}

// Whether every language can reach its validation target using pages of
// single-language domains, at most `cap` (largest) pages per domain.
inline bool validation_feasible(const Corpus& corpus, const SplitConfig& config) {
  std::map<std::string, std::set<std::string>> langs_of_domain;
  std::map<std::string, std::size_t> total;
  for (const auto& p : corpus.pages()) {
    langs_of_domain[p.root_domain].insert(p.language);
    total[p.language] += p.size();
  }
  std::map<std::string, std::vector<std::size_t>> sizes_of_domain;
  std::map<std::string, std::string> lang_of_domain;
  for (const auto& p : corpus.pages())
    if (langs_of_domain[p.root_domain].size() == 1) {
      sizes_of_domain[p.root_domain].push_back(p.size());
      lang_of_domain[p.root_domain] = p.language;
    }
  std::map<std::string, std::size_t> reachable;
  for (auto& [d, sizes] : sizes_of_domain) {
    std::sort(sizes.rbegin(), sizes.rend());
    for (std::size_t k = 0; k < sizes.size() && k < config.max_pages_per_domain_in_validation; ++k)
      reachable[lang_of_domain[d]] += sizes[k];
  }
  for (const auto& [lang, t] : total)
    if (static_cast<double>(reachable[lang]) < config.validation_fraction * static_cast<double>(t)) return false;
  return true;
}

struct SplitCheck {
  bool ok = true;
  std::string failure;
};

// Every split invariant, checked from the corpus and the manifest alone.
inline SplitCheck check_split(const Corpus& corpus, const SplitManifest& m) {
  SplitCheck r;
  auto fail = [&](std::string why) {
    if (r.ok) r.failure = std::move(why);
    r.ok = false;
  };
  std::map<std::string, const FaqPage*> by_id;
  for (const auto& p : corpus.pages()) by_id[p.page_id] = &p;

  std::set<std::string> all;
  for (const auto* list : {&m.validation, &m.training, &m.excluded})
    for (const auto& id : *list)
      if (!all.insert(id).second) fail("page listed twice: " + id);
  if (all.size() != corpus.size()) fail("manifest does not partition the corpus");

  std::map<std::string, std::set<std::string>> langs_of_domain;
  for (const auto& p : corpus.pages()) langs_of_domain[p.root_domain].insert(p.language);

  std::set<std::string> val_domains, train_domains;
  std::map<std::string, std::size_t> val_per_domain;
  std::map<std::string, std::size_t> val_pairs, total_pairs, max_page;
  for (const auto& p : corpus.pages()) {
    total_pairs[p.language] += p.size();
    max_page[p.language] = std::max(max_page[p.language], p.size());
  }
  for (const auto& id : m.validation) {
    const FaqPage& p = *by_id.at(id);
    val_domains.insert(p.root_domain);
    ++val_per_domain[p.root_domain];
    val_pairs[p.language] += p.size();
    if (langs_of_domain[p.root_domain].size() > 1) fail("multi-language domain in validation: " + p.root_domain);
  }
  std::map<std::pair<std::string, std::string>, std::size_t> train_per_domain;
  for (const auto& id : m.training) {
    const FaqPage& p = *by_id.at(id);
    train_domains.insert(p.root_domain);
    ++train_per_domain[{p.root_domain, p.language}];
  }
  for (const auto& d : val_domains)
    if (train_domains.contains(d)) fail("domain in both splits: " + d);
  for (const auto& [d, n] : val_per_domain)
    if (n > m.config.max_pages_per_domain_in_validation) fail("too many validation pages for " + d);
  if (m.config.one_page_per_domain_training)
    for (const auto& [key, n] : train_per_domain)
      if (n > 1) fail("more than one training page for " + key.first + "/" + key.second);

  for (const auto& [lang, ls] : m.per_language) {
    const double total = static_cast<double>(total_pairs[lang]);
    const double target = m.config.validation_fraction * total;
    const double achieved = static_cast<double>(val_pairs[lang]);
    if (achieved != static_cast<double>(ls.achieved_pairs)) fail("per-language tally mismatch for " + lang);
    if (achieved > target + static_cast<double>(max_page[lang])) fail("overshoot for " + lang);
    if (achieved < target && !ls.exhausted) fail("undershoot without exhaustion for " + lang);
  }
  return r;
}

}  // namespace faqkit::testing
