#include "faqkit/extract.hpp"

#include <json.hpp>
#include <map>

#include "faqkit/html.hpp"

namespace faqkit {
namespace {

using nlohmann::json;

bool has_type(const json& obj, std::string_view wanted) {
  const auto it = obj.find("@type");
  if (it == obj.end()) return false;
  if (it->is_string()) return it->get_ref<const std::string&>() == wanted;
  if (it->is_array())
    for (const auto& t : *it)
      if (t.is_string() && t.get_ref<const std::string&>() == wanted) return true;
  return false;
}

void add_candidates(const json& node, std::vector<const json*>& out) {
  const auto add = [&](const json& obj) {
    out.push_back(&obj);
    if (const auto g = obj.find("@graph"); g != obj.end() && g->is_array())
      for (const auto& e : *g)
        if (e.is_object()) out.push_back(&e);
  };
  if (node.is_object()) {
    add(node);
  } else if (node.is_array()) {
    for (const auto& e : node)
      if (e.is_object()) add(e);
  }
}

const json* answer_text(const json& question) {
  auto it = question.find("acceptedAnswer");
  if (it == question.end()) return nullptr;
  const json* answer = &*it;
  if (answer->is_array()) {
    if (answer->empty()) return nullptr;
    answer = &(*answer)[0];
  }
  if (!answer->is_object()) return nullptr;
  const auto text = answer->find("text");
  return text != answer->end() && text->is_string() ? &*text : nullptr;
}

}  // namespace

ExtractStats& ExtractStats::operator+=(const ExtractStats& o) {
  ld_blocks += o.ld_blocks;
  bad_json += o.bad_json;
  faq_pages += o.faq_pages;
  questions += o.questions;
  incomplete_questions += o.incomplete_questions;
  return *this;
}

std::vector<RawFaqItem> extract_jsonld_faq(std::string_view html, std::string_view url,
                                           ExtractStats* stats) {
  ExtractStats scratch;
  ExtractStats& s = stats ? *stats : scratch;
  std::vector<RawFaqItem> items;
  for (const auto& block : html::ld_json_blocks(html)) {
    ++s.ld_blocks;
    const json doc = json::parse(block, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
      ++s.bad_json;
      continue;
    }
    std::vector<const json*> candidates;
    add_candidates(doc, candidates);
    for (const json* obj : candidates) {
      if (!has_type(*obj, "FAQPage")) continue;
      ++s.faq_pages;
      const auto main = obj->find("mainEntity");
      if (main == obj->end()) continue;
      std::vector<const json*> questions;
      if (main->is_array()) {
        for (const auto& q : *main) questions.push_back(&q);
      } else {
        questions.push_back(&*main);
      }
      for (const json* q : questions) {
        if (!q->is_object() || !has_type(*q, "Question")) continue;
        ++s.questions;
        const auto name = q->find("name");
        const json* answer = answer_text(*q);
        if (name == q->end() || !name->is_string() || !answer) {
          ++s.incomplete_questions;
          continue;
        }
        RawFaqItem item{html::to_plain_text(name->get_ref<const std::string&>()),
                        html::to_plain_text(answer->get_ref<const std::string&>()),
                        std::string(url), items.size()};
        if (item.question_text.empty() || item.answer_text.empty()) {
          ++s.incomplete_questions;
          continue;
        }
        items.push_back(std::move(item));
      }
    }
  }
  return items;
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::accepted: return "accepted";
    case RejectReason::no_question_mark: return "no_question_mark";
    case RejectReason::code_like_prefix: return "code_like_prefix";
    case RejectReason::empty_text: return "empty_text";
  }
  return "unknown";
}

FilterResult filter_pair(std::string_view question, std::string_view answer) {
  if (question.empty() || answer.empty()) return {RejectReason::empty_text};
  // U+061F ARABIC QUESTION MARK is D8 9F in UTF-8.
  if (question.find('?') == std::string_view::npos && question.find("\xD8\x9F") == std::string_view::npos)
    return {RejectReason::no_question_mark};
  const auto code_like = [](std::string_view s) { return s[0] == '<' || s[0] == '{' || s[0] == '['; };
  if (code_like(question) || code_like(answer)) return {RejectReason::code_like_prefix};
  return {};
}

std::vector<FaqPage> assemble_pages(std::span<const TaggedItem> items, const AssembleOptions& options) {
  std::map<std::string, std::size_t> per_language;
  for (const auto& t : items)
    if (t.tag.code != kUndetermined) ++per_language[t.tag.code];

  std::map<std::pair<std::string, std::string>, std::vector<FaqPair>> groups;
  for (const auto& t : items) {
    if (t.tag.code == kUndetermined || per_language[t.tag.code] < options.language_floor) continue;
    groups[{t.item.source_url, t.tag.code}].push_back({t.item.question_text, t.item.answer_text});
  }
  std::vector<FaqPage> pages;
  pages.reserve(groups.size());
  for (auto& [key, pairs] : groups) pages.push_back(make_page(key.first, key.second, std::move(pairs)));
  return pages;
}

}  // namespace faqkit
