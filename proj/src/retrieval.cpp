#include "faqkit/retrieval.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <set>

#include "faqkit/parallel.hpp"
#include "faqkit/rng.hpp"
#include "faqkit/text.hpp"

namespace faqkit {

Metrics compute_metrics(std::span<const std::size_t> ranks) {
  if (ranks.empty()) throw DataError("cannot compute metrics over zero queries");
  Metrics m;
  m.queries = ranks.size();
  std::size_t top1 = 0, top5 = 0;
  double reciprocal = 0.0;
  for (std::size_t r : ranks) {
    if (r == 0) throw DataError("ranks are 1-based");
    top1 += r == 1;
    top5 += r <= 5;
    reciprocal += 1.0 / static_cast<double>(r);
  }
  const double n = static_cast<double>(ranks.size());
  m.p_at_1 = static_cast<double>(top1) / n;
  m.mrr = reciprocal / n;
  m.r_at_5 = static_cast<double>(top5) / n;
  return m;
}

double expected_random_mrr(std::size_t candidates) {
  if (candidates == 0) throw DataError("no candidates");
  double harmonic = 0.0;
  for (std::size_t k = candidates; k >= 1; --k) harmonic += 1.0 / static_cast<double>(k);
  return harmonic / static_cast<double>(candidates);
}

// ---- tf-idf ---------------------------------------------------------------

std::vector<std::string> word_tokens(std::string_view input) {
  const std::u32string cps = text::to_utf32(text::lowercase(input));
  std::vector<std::string> tokens;
  std::u32string current;
  for (char32_t c : cps) {
    if (text::is_alnum(c)) {
      current.push_back(c);
    } else if (!current.empty()) {
      tokens.push_back(text::to_utf8(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(text::to_utf8(current));
  return tokens;
}

std::vector<std::string> word_ngrams(std::span<const std::string> tokens, std::size_t min_n, std::size_t max_n) {
  std::vector<std::string> grams;
  for (std::size_t n = min_n; n <= max_n; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string g = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        g += ' ';
        g += tokens[i + k];
      }
      grams.push_back(std::move(g));
    }
  }
  return grams;
}

namespace {

std::map<std::string, std::size_t> count_ngrams(std::string_view s, std::size_t min_n, std::size_t max_n) {
  std::map<std::string, std::size_t> counts;
  for (auto& g : word_ngrams(word_tokens(s), min_n, max_n)) ++counts[std::move(g)];
  return counts;
}

}  // namespace

TfidfModel::TfidfModel(std::span<const std::string> documents, std::size_t min_n, std::size_t max_n)
    : min_n_(min_n), max_n_(max_n) {
  std::vector<std::map<std::string, std::size_t>> counts;
  std::set<std::string> terms;
  for (const auto& d : documents) {
    counts.push_back(count_ngrams(d, min_n, max_n));
    for (const auto& [g, c] : counts.back()) terms.insert(g);
  }
  Eigen::Index next = 0;
  for (const auto& t : terms) vocabulary_.emplace(t, next++);

  Eigen::VectorXd df = Eigen::VectorXd::Zero(next);
  for (const auto& c : counts)
    for (const auto& [g, n] : c) df(vocabulary_.at(g)) += 1.0;
  const double n_docs = static_cast<double>(documents.size());
  idf_ = ((1.0 + n_docs) / (1.0 + df.array())).log() + 1.0;

  for (const auto& c : counts) {
    SparseVec v(next);
    for (const auto& [g, n] : c) {
      const Eigen::Index k = vocabulary_.at(g);
      v.coeffRef(k) = static_cast<double>(n) * idf_(k);
    }
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    documents_.push_back(std::move(v));
  }
}

SparseVec TfidfModel::transform(std::string_view s) const {
  SparseVec v(static_cast<Eigen::Index>(vocabulary_.size()));
  for (const auto& [g, n] : count_ngrams(s, min_n_, max_n_)) {
    const auto it = vocabulary_.find(g);
    if (it == vocabulary_.end()) continue;
    v.coeffRef(it->second) = static_cast<double>(n) * idf_(it->second);
  }
  const double norm = v.norm();
  if (norm > 0.0) v /= norm;
  return v;
}

namespace {

std::vector<std::string> answers_of(const FaqPage& page) {
  std::vector<std::string> answers;
  answers.reserve(page.pairs.size());
  for (const auto& p : page.pairs) answers.push_back(p.answer);
  return answers;
}

Eigen::VectorXd score_against(const TfidfModel& model, std::string_view query) {
  const SparseVec q = model.transform(query);
  const auto& docs = model.document_vectors();
  Eigen::VectorXd row(static_cast<Eigen::Index>(docs.size()));
  for (std::size_t j = 0; j < docs.size(); ++j) row(static_cast<Eigen::Index>(j)) = q.dot(docs[j]);
  return row;
}

}  // namespace

ScoreMatrix tfidf_score_page(const FaqPage& page) {
  const auto answers = answers_of(page);
  const TfidfModel model(answers);
  const auto n = static_cast<Eigen::Index>(page.pairs.size());
  ScoreMatrix scores(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    scores.row(i) = score_against(model, page.pairs[static_cast<std::size_t>(i)].question).transpose();
  return scores;
}

Eigen::VectorXd TfidfScorer::score_query(std::string_view query, const FaqPage& page) const {
  const auto answers = answers_of(page);
  return score_against(TfidfModel(answers), query);
}

// ---- embeddings -----------------------------------------------------------

std::string_view to_string(Role role) { return role == Role::question ? "question" : "answer"; }

std::string describe(const EmbeddingKey& key) {
  return "(" + key.page_id + ", " + std::string(to_string(key.role)) + ", " + std::to_string(key.index) + ")";
}

void EmbeddingTable::insert(EmbeddingKey key, Eigen::VectorXf vector) {
  if (vector.size() == 0) throw DataError("empty embedding for " + describe(key));
  if (!vector.allFinite()) throw DataError("non-finite embedding for " + describe(key));
  if (entries_.empty()) {
    dimension_ = vector.size();
  } else if (vector.size() != dimension_) {
    throw DataError("embedding " + describe(key) + " has dimension " + std::to_string(vector.size()) +
                    ", table dimension is " + std::to_string(dimension_));
  }
  entries_.insert_or_assign(std::move(key), std::move(vector));
}

const Eigen::VectorXf& EmbeddingTable::at(const EmbeddingKey& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw DataError("missing embedding for " + describe(key));
  return it->second;
}

EmbeddingTable EmbeddingTable::read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding table " + path.string());
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto role = j.at("role").get<std::string>();
      if (role != "question" && role != "answer") throw DataError("role must be question or answer");
      const auto values = j.at("vector").get<std::vector<float>>();
      table.insert({j.at("page").get<std::string>(), role == "question" ? Role::question : Role::answer,
                    j.at("index").get<std::size_t>()},
                   Eigen::Map<const Eigen::VectorXf>(values.data(), static_cast<Eigen::Index>(values.size())));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("embedding line " + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw DataError("embedding line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

void EmbeddingTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write embedding table " + path.string());
  std::string line;
  char buf[32];
  for (const auto& [key, v] : entries_) {
    ordered_json head{{"page", key.page_id}, {"role", std::string(to_string(key.role))}, {"index", key.index}};
    line = to_json_line(head);
    line.pop_back();
    line += ", \"vector\": [";
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (k) line += ", ";
      const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v(k));
      line.append(buf, end);
    }
    line += "]}\n";
    out << line;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

ScoreMatrix embedding_score_page(const FaqPage& page, const EmbeddingTable& table) {
  const auto n = static_cast<Eigen::Index>(page.pairs.size());
  const Eigen::Index d = table.dimension();
  Eigen::MatrixXd questions(n, d), answers(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    questions.row(i) = table.at({page.page_id, Role::question, idx}).cast<double>().transpose();
    answers.row(i) = table.at({page.page_id, Role::answer, idx}).cast<double>().transpose();
  }
  return questions * answers.transpose();
}

EmbeddingScorer::EmbeddingScorer(const EmbeddingTable& table, std::string label)
    : table_(&table), label_(std::move(label)) {}

EmbeddingScorer::EmbeddingScorer(Encoder encoder, std::string label)
    : encoder_(std::move(encoder)), label_(std::move(label)) {}

ScoreMatrix EmbeddingScorer::score_page(const FaqPage& page) const {
  if (table_) return embedding_score_page(page, *table_);
  const auto n = static_cast<Eigen::Index>(page.pairs.size());
  std::vector<Eigen::VectorXf> q, a;
  for (const auto& p : page.pairs) {
    q.push_back(encoder_(p.question, Role::question));
    a.push_back(encoder_(p.answer, Role::answer));
  }
  const Eigen::Index d = q.front().size();
  Eigen::MatrixXd questions(n, d), answers(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (q[idx].size() != d || a[idx].size() != d) throw DataError("encoder returned mixed dimensions");
    questions.row(i) = q[idx].cast<double>().transpose();
    answers.row(i) = a[idx].cast<double>().transpose();
  }
  return questions * answers.transpose();
}

Eigen::VectorXd EmbeddingScorer::score_query(std::string_view query, const FaqPage& page) const {
  if (!encoder_) throw ConfigError("an embedding table cannot score free-text queries; load a model instead");
  const Eigen::VectorXd q = encoder_(query, Role::question).cast<double>();
  Eigen::VectorXd scores(static_cast<Eigen::Index>(page.pairs.size()));
  for (std::size_t j = 0; j < page.pairs.size(); ++j) {
    const Eigen::VectorXd a = encoder_(page.pairs[j].answer, Role::answer).cast<double>();
    if (a.size() != q.size()) throw DataError("encoder returned mixed dimensions");
    scores(static_cast<Eigen::Index>(j)) = q.dot(a);
  }
  return scores;
}

ScoreMatrix RandomScorer::score_page(const FaqPage& page) const {
  SplitMix64 rng(derive_seed(seed_, text::fnv1a64(page.page_id)));
  const auto n = static_cast<Eigen::Index>(page.pairs.size());
  ScoreMatrix scores(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) scores(i, j) = rng.uniform();
  return scores;
}

Eigen::VectorXd RandomScorer::score_query(std::string_view query, const FaqPage& page) const {
  SplitMix64 rng(derive_seed(seed_, text::fnv1a64(query, text::fnv1a64(page.page_id))));
  Eigen::VectorXd scores(static_cast<Eigen::Index>(page.pairs.size()));
  for (Eigen::Index j = 0; j < scores.size(); ++j) scores(j) = rng.uniform();
  return scores;
}

// ---- evaluation -----------------------------------------------------------

namespace {

ordered_json group_json(const GroupEval& g) {
  return {{"p_at_1", g.metrics.p_at_1}, {"mrr", g.metrics.mrr}, {"r_at_5", g.metrics.r_at_5},
          {"queries", g.metrics.queries}, {"pages", g.pages}, {"ties", g.ties}};
}

}  // namespace

EvalReport evaluate(std::span<const FaqPage> pages, const Scorer& scorer, unsigned threads) {
  std::vector<PageEval> per_page(pages.size());
  parallel_for(pages.size(), threads, [&](std::size_t i) {
    const auto& page = pages[i];
    const ScoreMatrix scores = scorer.score_page(page);
    const auto n = static_cast<Eigen::Index>(page.pairs.size());
    if (scores.rows() != n || scores.cols() != n)
      throw DataError("scorer " + scorer.name() + " returned a " + std::to_string(scores.rows()) + "x" +
                      std::to_string(scores.cols()) + " matrix for page " + page.page_id);
    PageEval& e = per_page[i];
    e.page_id = page.page_id;
    e.language = page.language;
    e.candidates = page.pairs.size();
    for (const auto& r : rank_and_score(scores)) {
      e.ranks.push_back(r.rank);
      e.ties += r.ties;
    }
    e.metrics = compute_metrics(e.ranks);
  });

  EvalReport report;
  report.scorer = scorer.name();
  if (per_page.empty()) return report;
  std::map<std::string, std::vector<std::size_t>> ranks_by_language;
  std::vector<std::size_t> all_ranks;
  for (const auto& e : per_page) {
    auto& g = report.per_language[e.language];
    ++g.pages;
    g.ties += e.ties;
    ++report.overall.pages;
    report.overall.ties += e.ties;
    auto& lr = ranks_by_language[e.language];
    lr.insert(lr.end(), e.ranks.begin(), e.ranks.end());
    all_ranks.insert(all_ranks.end(), e.ranks.begin(), e.ranks.end());
  }
  for (auto& [lang, g] : report.per_language) g.metrics = compute_metrics(ranks_by_language[lang]);
  report.overall.metrics = compute_metrics(all_ranks);
  report.pages = std::move(per_page);
  return report;
}

EvalReport random_baseline(std::span<const FaqPage> pages, std::uint64_t seed, unsigned threads) {
  return evaluate(pages, RandomScorer(seed), threads);
}

ordered_json EvalReport::to_json() const {
  ordered_json j;
  j["scorer"] = scorer;
  j["overall"] = group_json(overall);
  ordered_json langs = ordered_json::object();
  for (const auto& [lang, g] : per_language) langs[lang] = group_json(g);
  j["per_language"] = langs;
  auto& arr = j["pages"] = ordered_json::array();
  for (const auto& p : pages)
    arr.push_back({{"page", p.page_id}, {"language", p.language}, {"queries", p.metrics.queries},
                   {"candidates", p.candidates}, {"ties", p.ties}, {"p_at_1", p.metrics.p_at_1},
                   {"mrr", p.metrics.mrr}, {"r_at_5", p.metrics.r_at_5}, {"ranks", p.ranks}});
  return j;
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report " + path.string());
  out << report.to_json().dump(2) << '\n';
}

// ---- query substitution ---------------------------------------------------

QueryMap read_query_map(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open query map " + path.string());
  QueryMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      const auto j = nlohmann::json::parse(line);
      map[{j.at("page").get<std::string>(), j.at("index").get<std::size_t>()}] = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw DataError("query map line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return map;
}

std::vector<FaqPage> substitute_queries(std::span<const FaqPage> pages, const QueryMap& map, bool strict) {
  std::vector<FaqPage> out(pages.begin(), pages.end());
  for (auto& page : out) {
    for (std::size_t k = 0; k < page.pairs.size(); ++k) {
      const auto it = map.find({page.page_id, k});
      if (it != map.end()) {
        page.pairs[k].question = it->second;
      } else if (strict) {
        throw DataError("no substitute query for (" + page.page_id + ", " + std::to_string(k) + ")");
      }
    }
  }
  return out;
}

std::vector<RankedAnswer> rank_answers(std::string_view query, const FaqPage& page, const Scorer& scorer) {
  const Eigen::VectorXd scores = scorer.score_query(query, page);
  std::vector<RankedAnswer> ranked;
  for (std::size_t j = 0; j < page.pairs.size(); ++j) {
    const double s = scores(static_cast<Eigen::Index>(j));
    if (std::isnan(s)) throw DataError("NaN score");
    ranked.push_back({j, s, page.pairs[j].answer});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedAnswer& a, const RankedAnswer& b) { return a.score > b.score; });
  return ranked;
}

}  // namespace faqkit
