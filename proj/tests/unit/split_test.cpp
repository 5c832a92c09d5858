#include <doctest.h>

#include <numeric>

#include "../common/random_corpus.hpp"
#include "faqkit/error.hpp"
#include "faqkit/fixtures.hpp"
#include "faqkit/split.hpp"
#include "helpers.hpp"

using namespace faqkit;
using namespace faqkit::testing;

namespace {

std::vector<FaqPair> n_pairs(std::size_t n) {
  std::vector<FaqPair> p;
  for (std::size_t i = 0; i < n; ++i) p.push_back({"q" + std::to_string(i) + "?", "a"});
  return p;
}

}  // namespace

TEST_SUITE("split") {
  TEST_CASE("ten equal single-page domains: exactly one validation page") {
    std::vector<FaqPage> pages;
    for (int d = 0; d < 10; ++d)
      pages.push_back(make_page("https://www.site" + std::to_string(d) + ".com/faq", "en", n_pairs(10)));
    const Corpus c(pages);
    const auto m = build_split(c, SplitConfig{});
    REQUIRE(m.validation.size() == 1);
    CHECK(m.training.size() == 9);
    CHECK(m.per_language.at("en").achieved_pairs == 10);
    CHECK(check_split(c, m).ok);
  }

  TEST_CASE("per-domain cap of three") {
    std::vector<FaqPage> pages;
    for (int p = 0; p < 5; ++p)
      pages.push_back(make_page("https://www.big.com/p" + std::to_string(p), "en", n_pairs(10)));
    pages.push_back(make_page("https://www.small.com/p", "en", n_pairs(1)));
    SplitConfig cfg;
    cfg.validation_fraction = 0.9;
    const Corpus c(pages);
    const auto m = build_split(c, cfg);
    CHECK(m.validation.size() == 4);
    CHECK(m.per_language.at("en").exhausted);
    CHECK(check_split(c, m).ok);
  }

  TEST_CASE("multi-language travel domain never reaches validation") {
    const Corpus c(fixtures::travel_pages());
    const auto m = build_split(c, SplitConfig{});
    const auto r = check_split(c, m);
    CHECK_MESSAGE(r.ok, r.failure);
    for (const auto& id : m.validation) CHECK(c.find(id)->root_domain != "travelbrand");
    const auto multi = load_json(fixture("warc/travel.expected.json"))["multi_language_domains"];
    CHECK(multi == nlohmann::json::array({"travelbrand"}));
  }

  TEST_CASE("subdomains and suffixes of one root domain never straddle the split") {
    const Corpus c(fixtures::travel_pages());
    const auto m = build_split(c, SplitConfig{});
    std::set<std::string> val;
    for (const auto& id : m.validation) val.insert(c.find(id)->root_domain);
    for (const auto& id : m.training) CHECK_FALSE(val.contains(c.find(id)->root_domain));
  }

  TEST_CASE("property: invariants on random corpora") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Corpus c = random_corpus(seed);
      for (bool one_page : {true, false}) {
        SplitConfig cfg;
        cfg.one_page_per_domain_training = one_page;
        const auto m = build_split(c, cfg, seed);
        const auto r = check_split(c, m);
        CHECK_MESSAGE(r.ok, "seed " << seed << ": " << r.failure);
        CHECK(build_split(c, cfg, seed).to_json() == m.to_json());
      }
    }
  }

  TEST_CASE("property: validation pages are at least as large as training candidates on average") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Corpus c = random_corpus(seed);
      SplitConfig cfg;
      cfg.one_page_per_domain_training = false;
      const auto m = build_split(c, cfg);
      if (m.validation.empty() || m.training.empty()) continue;
      std::map<std::string, std::pair<double, double>> val, train;
      for (const auto& id : m.validation) {
        auto& [sum, n] = val[c.find(id)->language];
        sum += static_cast<double>(c.find(id)->size());
        n += 1;
      }
      std::map<std::string, std::set<std::string>> langs_of_domain;
      for (const auto& p : c.pages()) langs_of_domain[p.root_domain].insert(p.language);
      for (const auto& id : m.training) {
        const FaqPage* p = c.find(id);
        if (langs_of_domain[p->root_domain].size() != 1) continue;
        auto& [sum, n] = train[p->language];
        sum += static_cast<double>(p->size());
        n += 1;
      }
      for (const auto& [lang, v] : val)
        if (train.contains(lang)) CHECK(v.first / v.second >= train[lang].first / train[lang].second);
    }
  }

  TEST_CASE("manifest round trip") {
    TempDir dir("split");
    const Corpus c = random_corpus(3);
    const auto m = build_split(c, SplitConfig{}, 17);
    write_manifest(m, dir / "m.json");
    const auto back = read_manifest(dir / "m.json");
    CHECK(back.to_json() == m.to_json());
    CHECK(back.seed == 17);
    CHECK(select_pages(c, back.validation).size() == m.validation.size());
  }

  TEST_CASE("config validation") {
    SplitConfig c;
    c.validation_fraction = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.validation_fraction = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("histogram") {
    const std::vector<std::size_t> sizes{3, 7, 12};
    const auto h = pairs_per_page_histogram(std::span<const std::size_t>(sizes));
    REQUIRE(h.size() == 7);
    CHECK(h[0].label == "5");
    CHECK(h[0].percent == doctest::Approx(100.0 / 3));
    CHECK(h[2].percent == doctest::Approx(100.0 / 3));
    CHECK(h[6].label == "30+");
    const std::vector<std::size_t> small{1, 5};
    CHECK(pairs_per_page_histogram(std::span<const std::size_t>(small))[0].percent == 100.0);
    CHECK(pairs_per_page_histogram(std::span<const std::size_t>()).empty());
  }

  TEST_CASE("validation histogram is shifted toward large pages") {
    const Corpus c = random_corpus(42);
    SplitConfig cfg;
    cfg.one_page_per_domain_training = false;
    const auto m = build_split(c, cfg);
    const auto val = select_pages(c, m.validation);
    const auto train = select_pages(c, m.training);
    REQUIRE_FALSE(val.empty());
    CHECK(pairs_per_page_histogram(val)[0].percent < pairs_per_page_histogram(train)[0].percent);
  }
}
