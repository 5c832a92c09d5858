#include <doctest.h>

#include <cstdint>
#include <map>

#include "faqkit/extract.hpp"
#include "faqkit/html.hpp"
#include "faqkit/language.hpp"
#include "faqkit/warc.hpp"
#include "helpers.hpp"

using namespace faqkit;
using namespace faqkit::testing;

namespace {

std::vector<RawFaqItem> items_of(const std::string& archive, ExtractStats* stats = nullptr) {
  std::vector<RawFaqItem> out;
  for (const auto& doc : html_responses(read_all_records(fixture(archive)))) {
    auto items = extract_jsonld_faq(doc.html, doc.url, stats);
    out.insert(out.end(), items.begin(), items.end());
  }
  return out;
}

}  // namespace

TEST_SUITE("html") {
  TEST_CASE("entities") {
    CHECK(html::decode_entities("a &amp; b &lt;c&gt; &#233; &#xE9; &apos;&nbsp;") ==
          "a & b <c> \xC3\xA9 \xC3\xA9 '\xC2\xA0");
    CHECK(html::decode_entities("&unknown; &#0;") == "&unknown; \xEF\xBF\xBD");
  }

  TEST_CASE("tags, scripts and comments") {
    CHECK(html::to_plain_text("<p>Yes.<br/>See &amp; read</p><script>x<y</script><!-- c -->end") ==
          "Yes. See & read end");
    const auto blocks = html::ld_json_blocks(
        "<script type=\"application/ld+json\">{\"a\":1}</script><script>no</script>"
        "<SCRIPT type='application/ld+json'>[2]</SCRIPT>");
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[1] == "[2]");
  }
}

TEST_SUITE("extract") {
  TEST_CASE("graph container and typed arrays") {
    const auto items = items_of("warc/graph.warc");
    REQUIRE(items.size() == 2);
    CHECK(items[0].question_text == "How much does a day pass cost?");
    CHECK(items[1].index == 1);
  }

  TEST_CASE("chunked transfer encoding") {
    const auto items = items_of("warc/chunked.warc");
    REQUIRE(items.size() == 2);
    CHECK(items[1].answer_text == "Cars are allowed on the morning ferry only.");
  }

  TEST_CASE("a malformed block does not hide the valid one") {
    ExtractStats stats;
    const auto items = items_of("warc/malformed_json.warc", &stats);
    CHECK(items.size() == 2);
    CHECK(stats.bad_json == 1);
    CHECK(stats.ld_blocks == 2);
  }

  TEST_CASE("answer markup is stripped and entities decoded") {
    const auto items = items_of("warc/basic.warc");
    REQUIRE(items.size() == 3);
    CHECK(items[0].answer_text == "Yes. See & read our policy.");
    CHECK(items[1].answer_text == "Every rental includes a life jacket and a waterproof bag.");
  }

  TEST_CASE("mainEntity object and acceptedAnswer array") {
    const std::string html =
        R"(<script type="application/ld+json">{"@type":"FAQPage","mainEntity":{"@type":"Question","name":"Why?",)"
        R"("acceptedAnswer":[{"@type":"Answer","text":"First."},{"@type":"Answer","text":"Second."}]}}</script>)";
    const auto items = extract_jsonld_faq(html, "https://e.example.com/");
    REQUIRE(items.size() == 1);
    CHECK(items[0].answer_text == "First.");
  }

  TEST_CASE("non-FAQ types are ignored") {
    const std::string html =
        R"(<script type="application/ld+json">{"@type":"Product","mainEntity":[{"@type":"Question","name":"x?",)"
        R"("acceptedAnswer":{"text":"y"}}]}</script>)";
    CHECK(extract_jsonld_faq(html, "u").empty());
  }

  TEST_CASE("pair filter") {
    CHECK(filter_pair("Why?", "Because.").accepted());
    CHECK(filter_pair("\xD9\x84\xD9\x85\xD8\xA7\xD8\xB0\xD8\x9F", "x").accepted());
    CHECK(filter_pair("Opening hours", "9 to 5").reason == RejectReason::no_question_mark);
    CHECK(filter_pair("Code?", "{ \"a\": 1 }").reason == RejectReason::code_like_prefix);
    CHECK(filter_pair("<b>Q?</b>", "a").reason == RejectReason::code_like_prefix);
    CHECK(filter_pair("Q?", "[1]").reason == RejectReason::code_like_prefix);
    CHECK(filter_pair("Q?", "").reason == RejectReason::empty_text);
  }

  TEST_CASE("assembly groups by url and language and applies the floor") {
    auto item = [](std::string url, std::size_t idx, std::string lang) {
      return TaggedItem{{"q" + std::to_string(idx) + "?", "a", url, idx}, {lang, 1.0}};
    };
    const std::vector<TaggedItem> items{item("https://b.example.com/", 0, "en"), item("https://a.example.com/", 0, "en"),
                                        item("https://a.example.com/", 1, "fr"), item("https://a.example.com/", 2, "en"),
                                        item("https://c.example.com/", 0, "und")};
    const auto pages = assemble_pages(items, {1});
    REQUIRE(pages.size() == 3);
    CHECK(pages[0].url == "https://a.example.com/");
    CHECK(pages[0].language == "en");
    CHECK(pages[0].pairs.size() == 2);
    CHECK(pages[0].pairs[1].question == "q2?");
    CHECK(assemble_pages(items, {2}).size() == 2);
    CHECK(assemble_pages(items, {4}).empty());
  }
}

TEST_SUITE("language") {
  TEST_CASE("built-in profiles identify the supported languages") {
    // Single sentences rarely clear the default confidence; the ranking is what is checked here.
    ClassifierOptions any;
    any.threshold = 0.0;
    const auto c = LanguageClassifier::builtin(any);
    CHECK(c.classify("Where can I find the opening hours of the museum and how much is a ticket?").code == "en");
    CHECK(c.classify("O\xC3\xB9 puis-je trouver les horaires d'ouverture du mus\xC3\xA9" "e et combien co\xC3\xBBte un billet ?")
              .code == "fr");
    CHECK(c.classify("Wo finde ich die \xC3\x96" "ffnungszeiten des Museums und wie viel kostet eine Eintrittskarte?")
              .code == "de");
    CHECK(c.classify("\xC2\xBF" "D\xC3\xB3nde puedo encontrar el horario del museo y cu\xC3\xA1nto cuesta una entrada?")
              .code == "es");
  }

  TEST_CASE("profiles from fixture text: confident and minimal by brute force") {
    const std::map<std::string, std::string> samples{
        {"en", "Is breakfast included in the price of the room? Breakfast is included for all guests."},
        {"fr", "Le petit d\xC3\xA9jeuner est-il inclus dans le prix de la chambre ? Il est inclus pour tous."},
        {"de", "Ist das Fr\xC3\xBChst\xC3\xBC" "ck im Zimmerpreis enthalten? Es ist f\xC3\xBCr alle G\xC3\xA4ste inbegriffen."}};
    const auto c = LanguageClassifier::from_samples(samples);
    const std::string text = "Is breakfast included in the price of the room?";
    const auto tag = c.classify(text);
    CHECK(tag.code == "en");
    CHECK(tag.confidence >= ClassifierOptions{}.threshold);
    const auto doc = NgramProfile::from_text(text);
    std::size_t best = SIZE_MAX;
    std::string best_code;
    for (const auto& [code, profile] : c.profiles()) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < doc.size(); ++i) {
        std::size_t r = 300;
        for (std::size_t j = 0; j < profile.size(); ++j)
          if (profile.ngrams()[j] == doc.ngrams()[i]) r = i > j ? i - j : j - i;
        d += r;
      }
      if (d < best) best = d, best_code = code;
    }
    CHECK(best_code == tag.code);
    CHECK(tag.confidence == doctest::Approx(1.0 - double(best) / double(doc.size() * 300)));
  }

  TEST_CASE("low confidence becomes und") {
    ClassifierOptions strict;
    strict.threshold = 1.01;
    CHECK(LanguageClassifier::builtin(strict).classify("hello there").code == kUndetermined);
  }

  TEST_CASE("pass-through map wins and misses are und") {
    const auto c = LanguageClassifier::passthrough({{{"https://e.example.com/", 0}, "ja"}});
    CHECK(c.classify_pair("q", "a", "https://e.example.com/", 0) == LanguageTag{"ja", 1.0});
    CHECK(c.classify_pair("q", "a", "https://e.example.com/", 1).code == kUndetermined);
  }

  TEST_CASE("profile distance") {
    const auto p = NgramProfile::from_text("the quick brown fox jumps over the lazy dog");
    CHECK(out_of_place_distance(p, p, 300) == 0);
    CHECK(p.rank_of("_t").has_value());
    const auto q = NgramProfile::from_text("\xD0\xB6\xD0\xB6\xD0\xB6\xD0\xB6");
    CHECK(out_of_place_distance(q, p, 300) == 300 * q.size());
  }

  TEST_CASE("profile file round trip") {
    TempDir dir("lang");
    ClassifierOptions any;
    any.threshold = 0.0;
    const auto c = LanguageClassifier::builtin(any);
    c.save_profiles(dir / "p.json");
    const auto d = LanguageClassifier::from_profile_file(dir / "p.json", any);
    CHECK(d.profiles().size() == c.profiles().size());
    const std::string text = "Is breakfast included in the price of the room?";
    CHECK(d.classify(text) == c.classify(text));
    CHECK(d.classify(text).code == "en");
  }
}
