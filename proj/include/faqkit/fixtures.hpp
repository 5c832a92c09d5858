#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/json_line.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/warc.hpp"

namespace faqkit::fixtures {

inline constexpr std::uint64_t kDefaultFixtureSeed = 2021;

// Pronounceable lowercase pseudo-word of `syllables` consonant-vowel pairs.
std::string pseudo_word(SplitMix64& rng, std::size_t syllables);

// Ten hotel pages sharing one template and differing only in the hotel name
// (the page at index 3 carries one extra pair), plus one unrelated page last.
std::vector<FaqPage> hotel_pages(std::uint64_t seed = kDefaultFixtureSeed);

// Pages in en/fr/es/de. The "travelbrand" root domain spans all four
// languages; "tripnest" owns six English pages across two suffixes.
std::vector<FaqPage> travel_pages(std::uint64_t seed = kDefaultFixtureSeed);

// `pages` single-page domains of `pairs` English pairs; each question shares
// a private pseudo-word with its own answer and no other text.
std::vector<FaqPage> separable_pages(std::uint64_t seed = kDefaultFixtureSeed, std::size_t pages = 20,
                                     std::size_t pairs = 6);

// Questions and answers of the three-answer TF-IDF oracle fixture.
struct TfidfFixture {
  std::vector<std::string> questions;
  std::vector<std::string> answers;
};
TfidfFixture tfidf_fixture();

// HTML page carrying `page` as schema.org FAQPage JSON-LD.
std::string faq_html(const FaqPage& page);

// Writes the whole fixture tree under `dir`. Byte-identical for equal seeds.
void generate_fixtures(const std::filesystem::path& dir, std::uint64_t seed = kDefaultFixtureSeed);

}  // namespace faqkit::fixtures
