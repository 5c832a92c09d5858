#include <doctest.h>

#include "faqkit/json_line.hpp"
#include "faqkit/parallel.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/text.hpp"

#include <atomic>
#include <set>
#include <vector>

using namespace faqkit;

TEST_SUITE("text") {
  TEST_CASE("fnv1a64 reference values") {
    CHECK(text::fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(text::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(text::hex64(0xabcULL) == "0000000000000abc");
  }

  TEST_CASE("normalization") {
    CHECK(text::nfc("e\xCC\x81") == "\xC3\xA9");
    CHECK(text::lowercase("\xC3\x89T\xC3\x89") == "\xC3\xA9t\xC3\xA9");
    CHECK(text::normalize_whitespace("  a \t\n b\xC2\xA0 c ") == "a b c");
    CHECK(text::split_whitespace(" x  y ").size() == 2);
  }

  TEST_CASE("invalid utf-8 becomes replacement characters") {
    const std::string bad = "ok\xFF!";
    CHECK_FALSE(text::is_valid_utf8(bad));
    CHECK(text::sanitize_utf8(bad) == "ok\xEF\xBF\xBD!");
    CHECK(text::is_valid_utf8(text::sanitize_utf8(bad)));
  }

  TEST_CASE("utf-32 round trip") {
    const std::string s = "a\xC3\xA9\xE2\x82\xAC\xF0\x9F\x98\x80";
    const auto cps = text::to_utf32(s);
    CHECK(cps.size() == 4);
    CHECK(text::to_utf8(cps) == s);
    CHECK(text::is_letter(U'é'));
    CHECK_FALSE(text::is_alnum(U'-'));
  }
}

TEST_SUITE("json_line") {
  TEST_CASE("separators and no trailing newline") {
    const ordered_json j{{"b", 1}, {"a", {1.5, "x"}}};
    CHECK(to_json_line(j) == R"({"b": 1, "a": [1.5, "x"]})");
  }

  TEST_CASE("floats use shortest round-trip form") {
    CHECK(to_json_line(ordered_json{{"x", 0.1}}) == R"({"x": 0.1})");
  }
}

TEST_SUITE("rng") {
  TEST_CASE("splitmix64 reference sequence for seed 0") {
    SplitMix64 g(0);
    CHECK(g.next() == 0xe220a8397b1dcdafULL);
    CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  }

  TEST_CASE("below stays in range and covers it") {
    SplitMix64 g(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
      const auto x = g.below(7);
      CHECK(x < 7);
      seen.insert(x);
    }
    CHECK(seen.size() == 7);
  }

  TEST_CASE("shuffle is a permutation and seed-determined") {
    std::vector<int> a{1, 2, 3, 4, 5, 6, 7, 8}, b = a;
    SplitMix64 g1(9), g2(9);
    g1.shuffle(std::span<int>(a));
    g2.shuffle(std::span<int>(b));
    CHECK(a == b);
    std::multiset<int> s(a.begin(), a.end());
    CHECK(s == std::multiset<int>{1, 2, 3, 4, 5, 6, 7, 8});
  }

  TEST_CASE("derived seeds differ by key") { CHECK(derive_seed(1, 2) != derive_seed(1, 3)); }
}

TEST_SUITE("parallel") {
  TEST_CASE("every index visited once for any thread count") {
    for (unsigned t : {1u, 2u, 3u, 8u}) {
      std::vector<std::atomic<int>> hits(37);
      parallel_for(hits.size(), t, [&](std::size_t i) { ++hits[i]; });
      for (auto& h : hits) CHECK(h.load() == 1);
    }
  }

  TEST_CASE("worker exceptions propagate") {
    CHECK_THROWS_AS(parallel_for(10, 4, [](std::size_t i) {
                      if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
  }
}
