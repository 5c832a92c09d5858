#include <doctest.h>

#include <set>

#include "faqkit/fixtures.hpp"
#include "faqkit/retrieval.hpp"
#include "helpers.hpp"

using namespace faqkit;
using namespace faqkit::testing;
namespace fs = std::filesystem;

TEST_SUITE("fixtures") {
  TEST_CASE("generation is byte-identical and matches the committed tree") {
    TempDir a("fx-a"), b("fx-b");
    fixtures::generate_fixtures(a.path());
    fixtures::generate_fixtures(b.path());
    std::size_t files = 0;
    for (const auto& e : fs::recursive_directory_iterator(a.path())) {
      if (!e.is_regular_file()) continue;
      ++files;
      const auto rel = fs::relative(e.path(), a.path());
      CHECK_MESSAGE(slurp(e.path()) == slurp(b.path() / rel), rel.string());
      CHECK_MESSAGE(slurp(e.path()) == slurp(fixture_dir() / rel), "committed copy differs: " << rel.string());
    }
    CHECK(files > 20);
  }

  TEST_CASE("a different seed changes the synthetic families") {
    CHECK(fixtures::hotel_pages(1) != fixtures::hotel_pages(2));
  }

  TEST_CASE("hotel family shape") {
    const auto pages = fixtures::hotel_pages();
    REQUIRE(pages.size() == 11);
    CHECK(pages[3].size() == 7);
    CHECK(pages[0].pairs[0].question.find("airport shuttle") != std::string::npos);
    const auto sidecar = load_json(fixture("warc/hotels.expected.json"))["near_duplicates"];
    CHECK(sidecar["components"].size() == 2);
    CHECK(sidecar["components"][0].size() == 10);
    CHECK(sidecar["survivors"][0] == pages[3].url);
  }

  TEST_CASE("separable family: 20 pages of 6 pairs, private words") {
    const auto pages = fixtures::separable_pages();
    REQUIRE(pages.size() == 20);
    std::set<std::string> domains;
    for (const auto& p : pages) {
      CHECK(p.size() == 6);
      domains.insert(p.root_domain);
    }
    CHECK(domains.size() == 20);
    const auto sidecar = load_json(fixture("warc/separable.expected.json"));
    CHECK(std::abs(sidecar["random_mrr"].get<double>() - expected_random_mrr(6)) < 1e-12);
    CHECK(sidecar["near_duplicates"]["pages_after"] == 20);
  }
}
