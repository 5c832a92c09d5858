#include "faqkit/corpus.hpp"

#include <fstream>
#include <set>

#include "faqkit/domain.hpp"
#include "faqkit/error.hpp"
#include "faqkit/json_line.hpp"
#include "faqkit/text.hpp"

namespace faqkit {

std::string make_page_id(std::string_view url, std::string_view language) {
  std::uint64_t h = text::fnv1a64(url);
  h = text::fnv1a64("\n", h);
  h = text::fnv1a64(language, h);
  return text::hex64(h);
}

FaqPage make_page(std::string url, std::string language, std::vector<FaqPair> pairs) {
  FaqPage page;
  page.page_id = make_page_id(url, language);
  page.root_domain = root_domain_of(url);
  page.url = std::move(url);
  page.language = std::move(language);
  page.pairs = std::move(pairs);
  return page;
}

Tallies compute_tallies(std::span<const FaqPage> pages) {
  Tallies tallies;
  std::map<std::string, std::set<std::string>> domains;
  for (const auto& page : pages) {
    auto& t = tallies[page.language];
    t.pairs += page.pairs.size();
    t.pages += 1;
    domains[page.language].insert(page.root_domain);
  }
  for (auto& [lang, t] : tallies) t.domains = domains[lang].size();
  return tallies;
}

Corpus::Corpus(std::vector<FaqPage> pages) : pages_(std::move(pages)) {
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    const auto& page = pages_[i];
    if (page.pairs.empty())
      throw DataError("page " + page.page_id + " (" + page.url + ") has no pairs");
    auto [it, inserted] = seen.emplace(std::pair{page.url, page.language}, i);
    if (!inserted)
      throw DataError("pages " + std::to_string(it->second) + " and " + std::to_string(i) +
                      " share (url, language) = (" + page.url + ", " + page.language + ")");
    if (!by_id_.emplace(page.page_id, i).second)
      throw DataError("duplicate page id " + page.page_id);
  }
  tallies_ = compute_tallies(pages_);
}

std::size_t Corpus::pair_count() const {
  std::size_t n = 0;
  for (const auto& t : tallies_) n += t.second.pairs;
  return n;
}

const FaqPage* Corpus::find(std::string_view page_id) const {
  const auto it = by_id_.find(page_id);
  return it == by_id_.end() ? nullptr : &pages_[it->second];
}

namespace {

std::string required_string(const nlohmann::json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw DataError(std::string("missing or non-string field \"") + key + "\"");
  return it->get<std::string>();
}

FaqPage page_from_json(const nlohmann::json& obj) {
  if (!obj.is_object()) throw DataError("line is not a JSON object");
  FaqPage page;
  page.page_id = required_string(obj, "id");
  page.url = required_string(obj, "url");
  page.root_domain = required_string(obj, "domain");
  page.language = required_string(obj, "language");
  const auto pairs = obj.find("pairs");
  if (pairs == obj.end() || !pairs->is_array()) throw DataError("missing \"pairs\" array");
  for (const auto& p : *pairs) {
    if (!p.is_object()) throw DataError("pair is not an object");
    page.pairs.push_back({required_string(p, "question"), required_string(p, "answer")});
  }
  if (page.pairs.empty()) throw DataError("page has no pairs");
  if (page.page_id != make_page_id(page.url, page.language))
    throw DataError("id " + page.page_id + " does not match (url, language)");
  if (page.root_domain != root_domain_of(page.url))
    throw DataError("domain \"" + page.root_domain + "\" does not match url " + page.url);
  return page;
}

}  // namespace

Corpus parse_corpus(std::istream& in) {
  std::vector<FaqPage> pages;
  std::map<std::pair<std::string, std::string>, std::size_t> first_line;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      FaqPage page = page_from_json(nlohmann::json::parse(line));
      auto [it, inserted] = first_line.emplace(std::pair{page.url, page.language}, line_no);
      if (!inserted)
        throw DataError("duplicate (url, language) = (" + page.url + ", " + page.language +
                        ") also on line " + std::to_string(it->second));
      pages.push_back(std::move(page));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("corpus line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("corpus line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return Corpus(std::move(pages));
}

Corpus read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus " + path.string());
  return parse_corpus(in);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const auto& page : corpus.pages()) {
    ordered_json obj;
    obj["id"] = page.page_id;
    obj["url"] = page.url;
    obj["domain"] = page.root_domain;
    obj["language"] = page.language;
    auto& pairs = obj["pairs"] = ordered_json::array();
    for (const auto& p : page.pairs) {
      ordered_json pair;
      pair["question"] = p.question;
      pair["answer"] = p.answer;
      pairs.push_back(std::move(pair));
    }
    out << to_json_line(obj) << '\n';
  }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write corpus " + path.string());
  write_corpus(corpus, out);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace faqkit
