#include "faqkit/batch.hpp"

#include <fstream>
#include <map>

#include "faqkit/error.hpp"
#include "faqkit/json_line.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/text.hpp"

namespace faqkit {

std::vector<TrainingBatch> build_batches(std::span<const FaqPage> pages, const BatchOptions& options) {
  if (options.capacity < 2) throw ConfigError("batch capacity must be at least 2 for in-batch negatives");

  std::map<std::string, std::vector<const FaqPage*>> by_language;
  for (const auto& p : pages) by_language[p.language].push_back(&p);

  std::vector<TrainingBatch> batches;
  for (auto& [language, members] : by_language) {
    if (options.shuffle) {
      SplitMix64 rng(derive_seed(options.seed, text::fnv1a64(language)));
      rng.shuffle(std::span<const FaqPage*>(members));
    }
    TrainingBatch current{language, {}, options.capacity, false};
    const auto close = [&] {
      if (current.entries.empty()) return;
      current.partial = current.entries.size() < options.capacity;
      batches.push_back(std::move(current));
      current = TrainingBatch{language, {}, options.capacity, false};
    };
    for (const FaqPage* page : members) {
      const std::size_t n = page->pairs.size();
      if (n > options.capacity - current.entries.size()) close();
      for (std::size_t k = 0; k < n; ++k) {
        if (current.entries.size() == options.capacity) close();
        current.entries.push_back({page->page_id, k, page->pairs[k].question, page->pairs[k].answer});
      }
    }
    close();
  }
  return batches;
}

std::pair<std::string, std::string> render_entry(std::string_view question, std::string_view answer) {
  if (question.starts_with(kQuestionToken) || answer.starts_with(kAnswerToken))
    throw DataError("entry already rendered: marker token present");
  std::string q(kQuestionToken);
  q += ' ';
  q += question;
  std::string a(kAnswerToken);
  a += ' ';
  a += answer;
  return {std::move(q), std::move(a)};
}

void write_batches(std::span<const TrainingBatch> batches, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write batches " + path.string());
  for (const auto& b : batches) {
    ordered_json line;
    line["language"] = b.language;
    line["partial"] = b.partial;
    auto& entries = line["entries"] = ordered_json::array();
    for (const auto& e : b.entries) {
      auto [q, a] = render_entry(e.question, e.answer);
      entries.push_back(ordered_json{{"page", e.page_id}, {"index", e.pair_index}, {"q", q}, {"a", a}});
    }
    out << to_json_line(line) << '\n';
  }
}

std::vector<TrainingBatch> read_batches(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open batches " + path.string());
  const auto strip = [](const std::string& s, std::string_view marker) {
    if (!s.starts_with(marker) || s.size() < marker.size() + 1 || s[marker.size()] != ' ')
      throw DataError("batch entry is missing its " + std::string(marker) + " marker");
    return s.substr(marker.size() + 1);
  };
  std::vector<TrainingBatch> batches;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      const auto j = nlohmann::json::parse(line);
      TrainingBatch b;
      b.language = j.at("language").get<std::string>();
      b.partial = j.value("partial", false);
      for (const auto& e : j.at("entries"))
        b.entries.push_back({e.at("page").get<std::string>(), e.value("index", std::size_t{0}),
                             strip(e.at("q").get<std::string>(), kQuestionToken),
                             strip(e.at("a").get<std::string>(), kAnswerToken)});
      b.capacity = b.entries.size();
      batches.push_back(std::move(b));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("batches line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("batches line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return batches;
}

}  // namespace faqkit
