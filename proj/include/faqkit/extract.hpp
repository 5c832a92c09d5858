#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "faqkit/corpus.hpp"
#include "faqkit/language.hpp"

namespace faqkit {

struct RawFaqItem {
  std::string question_text;
  std::string answer_text;
  std::string source_url;
  // Position among the items extracted from this URL; keys pass-through maps.
  std::size_t index = 0;

  friend bool operator==(const RawFaqItem&, const RawFaqItem&) = default;
};

struct ExtractStats {
  std::size_t ld_blocks = 0;
  std::size_t bad_json = 0;
  std::size_t faq_pages = 0;
  std::size_t questions = 0;
  std::size_t incomplete_questions = 0;

  ExtractStats& operator+=(const ExtractStats& o);
};

// Items from schema.org FAQPage JSON-LD markup. Accepts top-level objects,
// arrays and "@graph" containers; "@type" may be a string or an array.
// Unparseable blocks are skipped and counted.
std::vector<RawFaqItem> extract_jsonld_faq(std::string_view html, std::string_view url,
                                           ExtractStats* stats = nullptr);

enum class RejectReason { accepted, no_question_mark, code_like_prefix, empty_text };

std::string_view to_string(RejectReason reason);

struct FilterResult {
  RejectReason reason = RejectReason::accepted;
  bool accepted() const { return reason == RejectReason::accepted; }
  explicit operator bool() const { return accepted(); }
};

// Questions must contain '?' or U+061F; neither text may start with '<', '{' or '['.
FilterResult filter_pair(std::string_view question, std::string_view answer);
inline FilterResult filter_pair(const RawFaqItem& item) {
  return filter_pair(item.question_text, item.answer_text);
}

struct TaggedItem {
  RawFaqItem item;
  LanguageTag tag;
};

struct AssembleOptions {
  std::size_t language_floor = 250;
};

// Groups accepted, tagged items into pages keyed by (url, language), drops
// "und" and languages with fewer than `language_floor` pairs, and returns
// pages sorted by (url, language) with source pair order preserved.
std::vector<FaqPage> assemble_pages(std::span<const TaggedItem> items,
                                    const AssembleOptions& options = {});

}  // namespace faqkit
