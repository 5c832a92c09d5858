#include "faqkit/pipeline.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>

#include "faqkit/parallel.hpp"

namespace faqkit {

ScorerKind parse_scorer_kind(std::string_view name) {
  if (name == "tfidf") return ScorerKind::tfidf;
  if (name == "embedding") return ScorerKind::embedding;
  if (name == "model") return ScorerKind::model;
  if (name == "random") return ScorerKind::random;
  throw ConfigError("unknown scorer '" + std::string(name) + "' (expected tfidf, embedding, model or random)");
}

std::string_view to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::tfidf: return "tfidf";
    case ScorerKind::embedding: return "embedding";
    case ScorerKind::model: return "model";
    case ScorerKind::random: return "random";
  }
  return "unknown";
}

EvalSubset parse_eval_subset(std::string_view name) {
  if (name == "validation") return EvalSubset::validation;
  if (name == "training") return EvalSubset::training;
  if (name == "all") return EvalSubset::all;
  throw ConfigError("unknown subset '" + std::string(name) + "' (expected validation, training or all)");
}

std::string_view to_string(EvalSubset subset) {
  switch (subset) {
    case EvalSubset::validation: return "validation";
    case EvalSubset::training: return "training";
    case EvalSubset::all: return "all";
  }
  return "unknown";
}

void PipelineConfig::validate() const {
  if (threads == 0) throw ConfigError("threads must be at least 1");
  if (!(extract.language_threshold >= 0.0 && extract.language_threshold <= 1.0))
    throw ConfigError("language threshold must lie in [0, 1]");
  dedup.validate();
  split.validate();
  if (batch.capacity < 2) throw ConfigError("batch capacity must be at least 2");
  train.validate();
}

// ---- config file ----------------------------------------------------------

namespace {

using Values = std::vector<std::string>;

const std::string& single(const std::string& key, const Values& v) {
  if (v.size() != 1) throw ConfigError("config key '" + key + "' takes exactly one value");
  return v.front();
}

template <typename T>
T parse_number(const std::string& key, const Values& v) {
  const std::string& s = single(key, v);
  T out{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ConfigError("config key '" + key + "': '" + s + "' is not a valid number");
  return out;
}

bool parse_bool(const std::string& key, const Values& v) {
  const std::string& s = single(key, v);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + s + "'");
}

using Setter = std::function<void(PipelineConfig&, const std::string&, const Values&, const fs::path&)>;

Setter path_setter(fs::path PipelineConfig::Paths::*member, bool input) {
  return [member, input](PipelineConfig& c, const std::string& key, const Values& v, const fs::path& base) {
    const fs::path p = single(key, v);
    c.paths.*member = !input || p.empty() || p.is_absolute() ? p : base / p;
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["threads"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.threads = parse_number<unsigned>(k, v);
    };
    t["paths.output_dir"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path& base) {
      const fs::path p = single(k, v);
      c.output_dir = p.empty() || p.is_absolute() ? p : base / p;
    };
    t["paths.warc"] = [](PipelineConfig& c, const std::string&, const Values& v, const fs::path& base) {
      c.paths.warc.clear();
      for (const auto& s : v) {
        const fs::path p = s;
        c.paths.warc.push_back(p.is_absolute() ? p : base / p);
      }
    };
    t["paths.language_map"] = path_setter(&PipelineConfig::Paths::language_map, true);
    t["paths.language_profiles"] = path_setter(&PipelineConfig::Paths::language_profiles, true);
    t["paths.extracted"] = path_setter(&PipelineConfig::Paths::extracted, false);
    t["paths.corpus"] = path_setter(&PipelineConfig::Paths::corpus, false);
    t["paths.dedup_report"] = path_setter(&PipelineConfig::Paths::dedup_report, false);
    t["paths.edges"] = path_setter(&PipelineConfig::Paths::edges, false);
    t["paths.manifest"] = path_setter(&PipelineConfig::Paths::manifest, false);
    t["paths.batches"] = path_setter(&PipelineConfig::Paths::batches, false);
    t["paths.model"] = path_setter(&PipelineConfig::Paths::model, false);
    t["paths.loss_trace"] = path_setter(&PipelineConfig::Paths::loss_trace, false);
    t["paths.embeddings"] = path_setter(&PipelineConfig::Paths::embeddings, false);
    t["paths.queries"] = path_setter(&PipelineConfig::Paths::queries, true);
    t["paths.report"] = path_setter(&PipelineConfig::Paths::report, false);

    t["extract.language_floor"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.extract.language_floor = parse_number<std::size_t>(k, v);
    };
    t["extract.language_threshold"] = [](PipelineConfig& c, const std::string& k, const Values& v,
                                         const fs::path&) { c.extract.language_threshold = parse_number<double>(k, v); };

    t["dedup.bands"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.dedup.bands = parse_number<std::size_t>(k, v);
    };
    t["dedup.rows"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.dedup.rows = parse_number<std::size_t>(k, v);
    };
    t["dedup.jaccard_threshold"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.dedup.jaccard_threshold = parse_number<double>(k, v);
    };
    t["dedup.signature_length"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.dedup.signature_length = parse_number<std::size_t>(k, v);
    };
    t["dedup.seed"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.dedup_seed = parse_number<std::uint64_t>(k, v);
    };

    t["split.validation_fraction"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.split.validation_fraction = parse_number<double>(k, v);
    };
    t["split.max_pages_per_domain_in_validation"] = [](PipelineConfig& c, const std::string& k, const Values& v,
                                                       const fs::path&) {
      c.split.max_pages_per_domain_in_validation = parse_number<std::size_t>(k, v);
    };
    t["split.one_page_per_domain_training"] = [](PipelineConfig& c, const std::string& k, const Values& v,
                                                 const fs::path&) {
      c.split.one_page_per_domain_training = parse_bool(k, v);
    };
    t["split.seed"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.split_seed = parse_number<std::uint64_t>(k, v);
    };

    t["batch.capacity"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.batch.capacity = parse_number<std::size_t>(k, v);
    };
    t["batch.seed"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.batch.seed = parse_number<std::uint64_t>(k, v);
    };
    t["batch.shuffle"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.batch.shuffle = parse_bool(k, v);
    };

    t["train.learning_rate"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.learning_rate = parse_number<double>(k, v);
    };
    t["train.epochs"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.epochs = parse_number<std::size_t>(k, v);
    };
    t["train.seed"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.seed = parse_number<std::uint64_t>(k, v);
    };
    t["train.clip_norm"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.clip_norm = parse_number<double>(k, v);
    };
    t["train.dimension"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.d = parse_number<std::size_t>(k, v);
    };
    t["train.feature_dimension"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.features.dimension = parse_number<std::size_t>(k, v);
    };
    t["train.ngram_sizes"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.features.ngram_sizes.clear();
      for (const auto& s : v) c.train.features.ngram_sizes.push_back(parse_number<std::size_t>(k, {s}));
    };
    t["train.max_chars"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.train.features.max_chars = parse_number<std::size_t>(k, v);
    };

    t["eval.scorer"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.eval.scorer = parse_scorer_kind(single(k, v));
    };
    t["eval.subset"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.eval.subset = parse_eval_subset(single(k, v));
    };
    t["eval.seed"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.eval.seed = parse_number<std::uint64_t>(k, v);
    };
    t["eval.strict_queries"] = [](PipelineConfig& c, const std::string& k, const Values& v, const fs::path&) {
      c.eval.strict_queries = parse_bool(k, v);
    };
    return t;
  }();
  return table;
}

}  // namespace

void apply_config(PipelineConfig& config, const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path.string());
  } catch (const CLI::Error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
  const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    const std::string key = item.fullname();
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown config key '" + key + "' in " + path.string());
    it->second(config, key, item.inputs, base);
  }
}

PipelineConfig load_config(const fs::path& path) {
  PipelineConfig config;
  apply_config(config, path);
  return config;
}

// ---- json echoes ----------------------------------------------------------

ordered_json to_json(const LshConfig& config) {
  return {{"signature_length", config.signature_length},
          {"bands", config.bands},
          {"rows", config.rows},
          {"jaccard_threshold", config.jaccard_threshold}};
}

ordered_json to_json(const TrainConfig& config) {
  return {{"learning_rate", config.learning_rate}, {"epochs", config.epochs},
          {"seed", config.seed},                   {"clip_norm", config.clip_norm},
          {"d", config.d},                         {"D", config.features.dimension},
          {"ngram_sizes", config.features.ngram_sizes}, {"max_chars", config.features.max_chars}};
}

void write_meta(const fs::path& artifact, const std::string& stage, const ordered_json& settings) {
  fs::path meta = artifact;
  meta += ".meta.json";
  std::ofstream out(meta, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + meta.string());
  out << ordered_json{{"stage", stage}, {"artifact", artifact.filename().string()}, {"settings", settings}}.dump(2)
      << '\n';
}

namespace {

std::vector<std::string> file_names(std::span<const fs::path> paths) {
  std::vector<std::string> names;
  for (const auto& p : paths) names.push_back(p.filename().string());
  return names;
}

void require_path(const fs::path& p, const char* what) {
  if (p.empty()) throw ConfigError(std::string("no path configured for ") + what);
}

void prepare(const PipelineConfig& config) {
  config.validate();
  if (!config.output_dir.empty()) fs::create_directories(config.output_dir);
}

}  // namespace

// ---- extraction -----------------------------------------------------------

ordered_json ExtractSummary::to_json() const {
  ordered_json rejected_json = ordered_json::object();
  for (const auto& [reason, n] : rejected) rejected_json[reason] = n;
  return {{"records", records},
          {"skipped_records", skipped_records},
          {"duplicate_urls", duplicate_urls},
          {"html_documents", html.accepted},
          {"not_response", html.not_response},
          {"not_html", html.not_html},
          {"bad_http", html.bad_http},
          {"bad_chunking", html.bad_chunking},
          {"unsupported_encoding", html.unsupported_encoding},
          {"ld_json_blocks", jsonld.ld_blocks},
          {"bad_json_blocks", jsonld.bad_json},
          {"faq_pages", jsonld.faq_pages},
          {"questions", jsonld.questions},
          {"incomplete_questions", jsonld.incomplete_questions},
          {"items", items},
          {"rejected", rejected_json},
          {"undetermined", undetermined},
          {"below_floor", below_floor},
          {"pages", pages},
          {"pairs", pairs}};
}

namespace {

struct DocumentItems {
  ExtractStats stats;
  std::vector<TaggedItem> accepted;
  std::vector<RejectReason> rejected;
};

void flush_documents(std::vector<HtmlDocument>& docs, const LanguageClassifier& classifier, unsigned threads,
                     ExtractSummary& summary, std::vector<TaggedItem>& tagged) {
  std::vector<DocumentItems> results(docs.size());
  parallel_for(docs.size(), threads, [&](std::size_t i) {
    auto& r = results[i];
    for (auto& item : extract_jsonld_faq(docs[i].html, docs[i].url, &r.stats)) {
      const FilterResult verdict = filter_pair(item);
      if (!verdict) {
        r.rejected.push_back(verdict.reason);
        continue;
      }
      LanguageTag tag = classifier.classify_pair(item.question_text, item.answer_text, item.source_url, item.index);
      r.accepted.push_back({std::move(item), std::move(tag)});
    }
  });
  for (auto& r : results) {
    summary.jsonld += r.stats;
    summary.items += r.accepted.size() + r.rejected.size();
    for (RejectReason reason : r.rejected) ++summary.rejected[std::string(to_string(reason))];
    for (auto& t : r.accepted) {
      if (t.tag.code == kUndetermined) ++summary.undetermined;
      tagged.push_back(std::move(t));
    }
  }
  docs.clear();
}

}  // namespace

ExtractResult extract_corpus(std::span<const fs::path> warcs, const LanguageClassifier& classifier,
                             const AssembleOptions& options, unsigned threads) {
  constexpr std::size_t kChunk = 256;
  ExtractSummary summary;
  std::vector<TaggedItem> tagged;
  std::set<std::string> seen_urls;
  std::vector<HtmlDocument> docs;
  for (const auto& path : warcs) {
    WarcReader reader(path);
    while (auto record = reader.next()) {
      auto doc = html_response(*record, &summary.html);
      if (!doc) continue;
      if (!seen_urls.insert(doc->url).second) {
        ++summary.duplicate_urls;
        continue;
      }
      docs.push_back(std::move(*doc));
      if (docs.size() == kChunk) flush_documents(docs, classifier, threads, summary, tagged);
    }
    summary.records += reader.yielded();
    summary.skipped_records += reader.skipped();
  }
  flush_documents(docs, classifier, threads, summary, tagged);

  std::vector<FaqPage> pages = assemble_pages(tagged, options);
  std::size_t kept = 0;
  for (const auto& p : pages) kept += p.pairs.size();
  summary.below_floor = tagged.size() - summary.undetermined - kept;
  summary.pages = pages.size();
  summary.pairs = kept;
  return {Corpus(std::move(pages)), summary};
}

LanguageClassifier make_classifier(const PipelineConfig& config) {
  ClassifierOptions options;
  options.threshold = config.extract.language_threshold;
  LanguageClassifier classifier = config.paths.language_profiles.empty()
                                      ? LanguageClassifier::builtin(options)
                                      : LanguageClassifier::from_profile_file(config.paths.language_profiles, options);
  if (!config.paths.language_map.empty()) classifier.set_passthrough(read_language_map(config.paths.language_map));
  return classifier;
}

// ---- stages ---------------------------------------------------------------

ExtractSummary run_extract(const PipelineConfig& config) {
  prepare(config);
  if (config.paths.warc.empty()) throw ConfigError("no WARC inputs configured");
  require_path(config.paths.extracted, "the extracted corpus");
  const LanguageClassifier classifier = make_classifier(config);
  auto result = extract_corpus(config.paths.warc, classifier, {config.extract.language_floor}, config.threads);
  write_corpus(result.corpus, config.out(config.paths.extracted));
  write_meta(config.out(config.paths.extracted), "extract",
             {{"warc", file_names(config.paths.warc)},
              {"language_map", config.paths.language_map.filename().string()},
              {"language_profiles", config.paths.language_profiles.empty()
                                        ? std::string("builtin")
                                        : config.paths.language_profiles.filename().string()},
              {"language_threshold", config.extract.language_threshold},
              {"language_floor", config.extract.language_floor},
              {"summary", result.summary.to_json()}});
  return result.summary;
}

DedupReport run_dedup(const PipelineConfig& config) {
  prepare(config);
  require_path(config.paths.corpus, "the deduplicated corpus");
  const Corpus corpus = read_corpus(config.out(config.paths.extracted));
  DedupResult result = dedup_corpus(corpus, config.dedup, config.dedup_seed, config.threads);
  write_corpus(result.corpus, config.out(config.paths.corpus));
  const ordered_json settings{{"input", config.paths.extracted.filename().string()},
                              {"seed", config.dedup_seed},
                              {"lsh", to_json(config.dedup)}};
  write_meta(config.out(config.paths.corpus), "dedup", settings);
  if (!config.paths.dedup_report.empty()) {
    std::ofstream out(config.out(config.paths.dedup_report), std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + config.out(config.paths.dedup_report).string());
    out << result.report.to_json().dump(2) << '\n';
  }
  if (!config.paths.edges.empty()) {
    std::ofstream out(config.out(config.paths.edges), std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + config.out(config.paths.edges).string());
    for (const auto& e : result.edges)
      out << to_json_line({{"a", e.a}, {"b", e.b}, {"jaccard", e.jaccard}}) << '\n';
  }
  return result.report;
}

SplitManifest run_split(const PipelineConfig& config) {
  prepare(config);
  require_path(config.paths.manifest, "the split manifest");
  const Corpus corpus = read_corpus(config.out(config.paths.corpus));
  SplitManifest manifest = build_split(corpus, config.split, config.split_seed);
  write_manifest(manifest, config.out(config.paths.manifest));
  for (const auto& w : manifest.warnings) std::fprintf(stderr, "split: warning: %s\n", w.c_str());
  return manifest;
}

std::vector<TrainingBatch> run_batch(const PipelineConfig& config) {
  prepare(config);
  require_path(config.paths.batches, "the batch file");
  const Corpus corpus = read_corpus(config.out(config.paths.corpus));
  std::vector<FaqPage> pages;
  std::string source = "all";
  if (!config.paths.manifest.empty()) {
    const SplitManifest manifest = read_manifest(config.out(config.paths.manifest));
    pages = select_pages(corpus, manifest.training);
    source = "training";
  } else {
    pages = corpus.pages();
  }
  auto batches = build_batches(pages, config.batch);
  write_batches(batches, config.out(config.paths.batches));
  write_meta(config.out(config.paths.batches), "batch",
             {{"corpus", config.paths.corpus.filename().string()},
              {"pages", source},
              {"capacity", config.batch.capacity},
              {"seed", config.batch.seed},
              {"shuffle", config.batch.shuffle},
              {"batches", batches.size()}});
  return batches;
}

TrainResult run_train(const PipelineConfig& config) {
  prepare(config);
  require_path(config.paths.model, "the model file");
  const auto batches = read_batches(config.out(config.paths.batches));
  TrainConfig train_config = config.train;
  train_config.threads = config.threads;
  TrainResult result = train(batches, train_config);
  result.model.save(config.out(config.paths.model));
  const ordered_json settings{{"batches", config.paths.batches.filename().string()}, {"train", to_json(config.train)}};
  write_meta(config.out(config.paths.model), "train-toy", settings);
  if (!config.paths.loss_trace.empty()) write_loss_trace(result.loss_trace, config.out(config.paths.loss_trace));
  if (!config.paths.embeddings.empty() && !config.paths.corpus.empty()) {
    const Corpus corpus = read_corpus(config.out(config.paths.corpus));
    export_embeddings(result.model, corpus.pages(), config.out(config.paths.embeddings), config.threads);
    write_meta(config.out(config.paths.embeddings), "train-toy",
               {{"corpus", config.paths.corpus.filename().string()}, {"train", to_json(config.train)}});
  }
  return result;
}

std::vector<FaqPage> eval_pages(const PipelineConfig& config, const Corpus& corpus) {
  if (config.eval.subset == EvalSubset::all) return corpus.pages();
  require_path(config.paths.manifest, "the split manifest");
  const SplitManifest manifest = read_manifest(config.out(config.paths.manifest));
  return select_pages(corpus, config.eval.subset == EvalSubset::validation ? manifest.validation : manifest.training);
}

namespace {

struct ScorerHandle {
  std::unique_ptr<Scorer> scorer;
  std::unique_ptr<EmbeddingTable> table;
  std::unique_ptr<LinearBiEncoder> model;
};

ScorerHandle make_scorer(const PipelineConfig& config) {
  ScorerHandle h;
  switch (config.eval.scorer) {
    case ScorerKind::tfidf:
      h.scorer = std::make_unique<TfidfScorer>();
      break;
    case ScorerKind::random:
      h.scorer = std::make_unique<RandomScorer>(config.eval.seed);
      break;
    case ScorerKind::embedding:
      require_path(config.paths.embeddings, "the embedding table");
      h.table = std::make_unique<EmbeddingTable>(EmbeddingTable::read(config.out(config.paths.embeddings)));
      h.scorer = std::make_unique<EmbeddingScorer>(*h.table);
      break;
    case ScorerKind::model:
      require_path(config.paths.model, "the model file");
      h.model = std::make_unique<LinearBiEncoder>(LinearBiEncoder::load(config.out(config.paths.model)));
      h.scorer = std::make_unique<EmbeddingScorer>(model_scorer(*h.model, "model"));
      break;
  }
  return h;
}

}  // namespace

EvalReport run_eval(const PipelineConfig& config) {
  prepare(config);
  require_path(config.paths.report, "the report");
  const Corpus corpus = read_corpus(config.out(config.paths.corpus));
  std::vector<FaqPage> pages = eval_pages(config, corpus);
  if (pages.empty()) throw DataError("no pages to evaluate in subset " + std::string(to_string(config.eval.subset)));
  if (!config.paths.queries.empty())
    pages = substitute_queries(pages, read_query_map(config.paths.queries), config.eval.strict_queries);
  const ScorerHandle h = make_scorer(config);
  EvalReport report = evaluate(pages, *h.scorer, config.threads);
  write_report(report, config.out(config.paths.report));
  ordered_json settings{{"corpus", config.paths.corpus.filename().string()},
                        {"subset", std::string(to_string(config.eval.subset))},
                        {"scorer", std::string(to_string(config.eval.scorer))},
                        {"queries", config.paths.queries.filename().string()}};
  if (config.eval.scorer == ScorerKind::random) settings["seed"] = config.eval.seed;
  write_meta(config.out(config.paths.report), "eval", settings);
  return report;
}

void run_stats(const PipelineConfig& config, std::ostream& out) {
  const Corpus corpus = read_corpus(config.out(config.paths.corpus));
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %10s %10s %10s\n", "language", "pairs", "pages", "domains");
  out << line;
  LanguageTally total;
  std::set<std::string> domains;
  for (const auto& p : corpus.pages()) domains.insert(p.root_domain);
  for (const auto& [lang, t] : corpus.tallies()) {
    std::snprintf(line, sizeof line, "%-10s %10zu %10zu %10zu\n", lang.c_str(), t.pairs, t.pages, t.domains);
    out << line;
    total.pairs += t.pairs;
    total.pages += t.pages;
  }
  std::snprintf(line, sizeof line, "%-10s %10zu %10zu %10zu\n", "total", total.pairs, total.pages, domains.size());
  out << line << "\npairs per page\n";
  for (const auto& bin : pairs_per_page_histogram(corpus.pages())) {
    std::snprintf(line, sizeof line, "%-10s %10zu %9.1f%%\n", bin.label.c_str(), bin.pages, bin.percent);
    out << line;
  }
}

void run_rank(const PipelineConfig& config, const std::string& page_id, const std::string& query, std::size_t top,
              std::ostream& out) {
  const Corpus corpus = read_corpus(config.out(config.paths.corpus));
  const FaqPage* page = corpus.find(page_id);
  if (!page) throw DataError("page " + page_id + " is not in " + config.out(config.paths.corpus).string());
  const ScorerHandle h = make_scorer(config);
  const auto ranked = rank_answers(query, *page, *h.scorer);
  for (std::size_t k = 0; k < ranked.size() && k < top; ++k)
    out << to_json_line({{"rank", k + 1}, {"index", ranked[k].index}, {"score", ranked[k].score},
                         {"answer", ranked[k].answer}})
        << '\n';
}

}  // namespace faqkit
