// faqkit: command-line front end for the FAQ corpus pipeline.
#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "faqkit/error.hpp"
#include "faqkit/pipeline.hpp"

namespace fs = std::filesystem;
using faqkit::PipelineConfig;

namespace {

// Flag values are collected here and applied over the config file, so that
// flags always win regardless of order.
struct Overrides {
  std::optional<fs::path> config;
  std::optional<unsigned> threads;
  std::optional<fs::path> out_dir;
  std::vector<std::function<void(PipelineConfig&)>> setters;
};

fs::path absolute_from_cwd(const fs::path& p) { return p.empty() || p.is_absolute() ? p : fs::absolute(p); }

template <class T, class Fn>
void bind(CLI::App* cmd, Overrides& o, const std::string& flag, const std::string& help, Fn apply) {
  auto value = std::make_shared<std::optional<T>>();
  cmd->add_option(flag, *value, help);
  o.setters.push_back([value, apply](PipelineConfig& c) {
    if (*value) apply(c, **value);
  });
}

void bind_path(CLI::App* cmd, Overrides& o, const std::string& flag, const std::string& help,
               fs::path PipelineConfig::Paths::*member) {
  bind<std::string>(cmd, o, flag, help,
                    [member](PipelineConfig& c, const std::string& v) { c.paths.*member = absolute_from_cwd(v); });
}

void common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline config file (TOML key-value)");
  cmd->add_option("--threads", o.threads, "Worker threads; output is identical for any count")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--out-dir", o.out_dir, "Directory for relative artifact paths");
}

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig config = o.config ? faqkit::load_config(*o.config) : PipelineConfig{};
  if (o.threads) config.threads = *o.threads;
  if (o.out_dir) config.output_dir = absolute_from_cwd(*o.out_dir);
  for (const auto& set : o.setters) set(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, deduplicate, split, batch and evaluate FAQ retrieval corpora from web archives."};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Overrides o;
  std::function<void(const PipelineConfig&)> action;

  // extract
  auto* extract = app.add_subcommand("extract", "Extract FAQ pairs from WARC archives into a corpus");
  common(extract, o);
  {
    auto warcs = std::make_shared<std::vector<std::string>>();
    extract->add_option("--warc", *warcs, "Input archive (.warc or .warc.gz); repeatable");
    o.setters.push_back([warcs](PipelineConfig& c) {
      if (warcs->empty()) return;
      c.paths.warc.clear();
      for (const auto& w : *warcs) c.paths.warc.push_back(absolute_from_cwd(w));
    });
  }
  bind_path(extract, o, "--out", "Extracted corpus JSONL", &PipelineConfig::Paths::extracted);
  bind_path(extract, o, "--language-map", "JSONL of {url, pair_index, language} overrides",
            &PipelineConfig::Paths::language_map);
  bind_path(extract, o, "--language-profiles", "Character n-gram profile file for the classifier",
            &PipelineConfig::Paths::language_profiles);
  bind<std::size_t>(extract, o, "--language-floor", "Drop languages with fewer pairs than this",
                    [](PipelineConfig& c, std::size_t v) { c.extract.language_floor = v; });
  bind<double>(extract, o, "--language-threshold", "Minimum classifier confidence for a pair",
               [](PipelineConfig& c, double v) { c.extract.language_threshold = v; });
  extract->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_extract(c); }; });

  // dedup
  auto* dedup = app.add_subcommand("dedup", "Remove near-duplicate pages with MinHash LSH");
  common(dedup, o);
  bind_path(dedup, o, "--in", "Extracted corpus JSONL", &PipelineConfig::Paths::extracted);
  bind_path(dedup, o, "--out", "Deduplicated corpus JSONL", &PipelineConfig::Paths::corpus);
  bind_path(dedup, o, "--report", "Dedup report JSON", &PipelineConfig::Paths::dedup_report);
  bind_path(dedup, o, "--edges", "Verified similarity edges JSONL (optional)", &PipelineConfig::Paths::edges);
  bind<std::size_t>(dedup, o, "--bands", "LSH bands", [](PipelineConfig& c, std::size_t v) {
    c.dedup.bands = v;
    c.dedup.signature_length = c.dedup.bands * c.dedup.rows;
  });
  bind<std::size_t>(dedup, o, "--rows", "Rows per band", [](PipelineConfig& c, std::size_t v) {
    c.dedup.rows = v;
    c.dedup.signature_length = c.dedup.bands * c.dedup.rows;
  });
  bind<double>(dedup, o, "--threshold", "Jaccard threshold for a duplicate edge",
               [](PipelineConfig& c, double v) { c.dedup.jaccard_threshold = v; });
  bind<std::uint64_t>(dedup, o, "--seed", "MinHash seed", [](PipelineConfig& c, std::uint64_t v) { c.dedup_seed = v; });
  dedup->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_dedup(c); }; });

  // split
  auto* split = app.add_subcommand("split", "Build the domain-disjoint training/validation manifest");
  common(split, o);
  bind_path(split, o, "--corpus", "Deduplicated corpus JSONL", &PipelineConfig::Paths::corpus);
  bind_path(split, o, "--out", "Split manifest JSON", &PipelineConfig::Paths::manifest);
  bind<double>(split, o, "--validation-fraction", "Target share of pairs in validation",
               [](PipelineConfig& c, double v) { c.split.validation_fraction = v; });
  bind<std::size_t>(split, o, "--max-per-domain", "Validation page cap per root domain",
                    [](PipelineConfig& c, std::size_t v) { c.split.max_pages_per_domain_in_validation = v; });
  bind<std::uint64_t>(split, o, "--seed", "Seed recorded in the manifest",
                      [](PipelineConfig& c, std::uint64_t v) { c.split_seed = v; });
  split->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_split(c); }; });

  // batch
  auto* batch = app.add_subcommand("batch", "Pack training pages into same-language batches");
  common(batch, o);
  bind_path(batch, o, "--corpus", "Deduplicated corpus JSONL", &PipelineConfig::Paths::corpus);
  bind_path(batch, o, "--split", "Split manifest; its training pages are batched", &PipelineConfig::Paths::manifest);
  bind_path(batch, o, "--out", "Batch JSONL", &PipelineConfig::Paths::batches);
  bind<std::size_t>(batch, o, "--capacity", "Pairs per batch",
                    [](PipelineConfig& c, std::size_t v) { c.batch.capacity = v; });
  bind<std::uint64_t>(batch, o, "--seed", "Shuffle seed",
                      [](PipelineConfig& c, std::uint64_t v) { c.batch.seed = v; });
  batch->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_batch(c); }; });

  // train-toy
  auto* train = app.add_subcommand("train-toy", "Train the hashed-feature linear bi-encoder");
  common(train, o);
  bind_path(train, o, "--batches", "Batch JSONL", &PipelineConfig::Paths::batches);
  bind_path(train, o, "--corpus", "Corpus whose pages get exported embeddings", &PipelineConfig::Paths::corpus);
  bind_path(train, o, "--model", "Model JSON output", &PipelineConfig::Paths::model);
  bind_path(train, o, "--loss", "Per-epoch loss CSV", &PipelineConfig::Paths::loss_trace);
  bind_path(train, o, "--embeddings", "Exported embedding JSONL", &PipelineConfig::Paths::embeddings);
  bind<double>(train, o, "--lr", "Learning rate",
               [](PipelineConfig& c, double v) { c.train.learning_rate = v; });
  bind<std::size_t>(train, o, "--epochs", "Epochs", [](PipelineConfig& c, std::size_t v) { c.train.epochs = v; });
  bind<std::uint64_t>(train, o, "--seed", "Initialization seed",
                      [](PipelineConfig& c, std::uint64_t v) { c.train.seed = v; });
  bind<std::size_t>(train, o, "--dim", "Embedding dimension", [](PipelineConfig& c, std::size_t v) { c.train.d = v; });
  train->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_train(c); }; });

  // eval
  auto* eval = app.add_subcommand("eval", "Score pages and report P@1, MRR and R@5");
  common(eval, o);
  bind_path(eval, o, "--corpus", "Corpus JSONL", &PipelineConfig::Paths::corpus);
  bind_path(eval, o, "--split", "Split manifest", &PipelineConfig::Paths::manifest);
  bind_path(eval, o, "--embeddings", "Embedding table for --scorer embedding", &PipelineConfig::Paths::embeddings);
  bind_path(eval, o, "--model", "Model file for --scorer model", &PipelineConfig::Paths::model);
  bind_path(eval, o, "--queries", "JSONL of {page, index, text} replacement queries",
            &PipelineConfig::Paths::queries);
  bind_path(eval, o, "--out", "Report JSON", &PipelineConfig::Paths::report);
  bind<std::string>(eval, o, "--scorer", "tfidf, embedding, model or random",
                    [](PipelineConfig& c, const std::string& v) { c.eval.scorer = faqkit::parse_scorer_kind(v); });
  bind<std::string>(eval, o, "--subset", "validation, training or all",
                    [](PipelineConfig& c, const std::string& v) { c.eval.subset = faqkit::parse_eval_subset(v); });
  bind<std::uint64_t>(eval, o, "--seed", "Seed of the random scorer",
                      [](PipelineConfig& c, std::uint64_t v) { c.eval.seed = v; });
  {
    auto strict = std::make_shared<bool>(false);
    eval->add_flag("--strict-queries", *strict, "Fail when a query replacement is missing");
    o.setters.push_back([strict](PipelineConfig& c) {
      if (*strict) c.eval.strict_queries = true;
    });
  }
  eval->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_eval(c); }; });

  // rank
  auto* rank = app.add_subcommand("rank", "Rank one page's answers against a free-text query");
  common(rank, o);
  std::string page_id, query;
  std::size_t top = 5;
  rank->add_option("--page", page_id, "Page id")->required();
  rank->add_option("--query", query, "Query text")->required();
  rank->add_option("--top", top, "Answers to print");
  bind_path(rank, o, "--corpus", "Corpus JSONL", &PipelineConfig::Paths::corpus);
  bind_path(rank, o, "--model", "Model file for --scorer model", &PipelineConfig::Paths::model);
  bind<std::string>(rank, o, "--scorer", "tfidf, model or random",
                    [](PipelineConfig& c, const std::string& v) { c.eval.scorer = faqkit::parse_scorer_kind(v); });
  rank->callback([&] {
    action = [&](const PipelineConfig& c) { faqkit::run_rank(c, page_id, query, top, std::cout); };
  });

  // stats
  auto* stats = app.add_subcommand("stats", "Per-language pair/page/domain tallies of a corpus");
  common(stats, o);
  bind_path(stats, o, "--corpus", "Corpus JSONL", &PipelineConfig::Paths::corpus);
  stats->callback([&] { action = [](const PipelineConfig& c) { faqkit::run_stats(c, std::cout); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    action(resolve(o));
  } catch (const faqkit::ConfigError& e) {
    std::cerr << "faqkit: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "faqkit: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
