#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "faqkit/batch.hpp"
#include "faqkit/corpus.hpp"
#include "faqkit/dedup.hpp"
#include "faqkit/extract.hpp"
#include "faqkit/json_line.hpp"
#include "faqkit/language.hpp"
#include "faqkit/retrieval.hpp"
#include "faqkit/split.hpp"
#include "faqkit/trainer.hpp"
#include "faqkit/warc.hpp"

namespace faqkit {

namespace fs = std::filesystem;

inline constexpr std::uint64_t kDefaultSplitSeed = 0;
inline constexpr std::uint64_t kDefaultEvalSeed = 1;

enum class ScorerKind { tfidf, embedding, model, random };
ScorerKind parse_scorer_kind(std::string_view name);
std::string_view to_string(ScorerKind kind);

enum class EvalSubset { validation, training, all };
EvalSubset parse_eval_subset(std::string_view name);
std::string_view to_string(EvalSubset subset);

// Every stage's inputs, outputs and knobs, loadable from a TOML-style
// key-value file whose sections mirror the member groups below. Command-line
// flags are applied on top. Relative artifact paths resolve against
// output_dir (the current directory when unset).
struct PipelineConfig {
  unsigned threads = 1;
  fs::path output_dir;

  fs::path out(const fs::path& artifact) const {
    return artifact.is_absolute() || output_dir.empty() ? artifact : output_dir / artifact;
  }

  struct Paths {
    std::vector<fs::path> warc;
    fs::path language_map;
    fs::path language_profiles;
    fs::path extracted = "extracted.jsonl";
    fs::path corpus = "corpus.jsonl";
    fs::path dedup_report = "dedup_report.json";
    fs::path edges;
    fs::path manifest = "manifest.json";
    fs::path batches = "batches.jsonl";
    fs::path model = "model.json";
    fs::path loss_trace = "loss.csv";
    fs::path embeddings = "embeddings.jsonl";
    fs::path queries;
    fs::path report = "report.json";
  } paths;

  struct Extract {
    std::size_t language_floor = 250;
    double language_threshold = 0.5;
  } extract;

  LshConfig dedup;
  std::uint64_t dedup_seed = kDefaultDedupSeed;

  SplitConfig split;
  std::uint64_t split_seed = kDefaultSplitSeed;

  BatchOptions batch;

  TrainConfig train;

  struct Eval {
    ScorerKind scorer = ScorerKind::tfidf;
    EvalSubset subset = EvalSubset::validation;
    std::uint64_t seed = kDefaultEvalSeed;
    bool strict_queries = false;
  } eval;

  void validate() const;
};

// Throws ConfigError on unknown keys or malformed values. Relative input
// paths (archives, language files, queries, output_dir) resolve against the
// file's directory; artifact paths stay relative to output_dir.
PipelineConfig load_config(const fs::path& path);
void apply_config(PipelineConfig& config, const fs::path& path);

// ---- extraction ----------------------------------------------------------

struct ExtractSummary {
  std::size_t records = 0;
  std::size_t skipped_records = 0;
  std::size_t duplicate_urls = 0;
  HtmlFilterStats html;
  ExtractStats jsonld;
  std::size_t items = 0;
  std::map<std::string, std::size_t> rejected;
  std::size_t undetermined = 0;
  std::size_t below_floor = 0;
  std::size_t pages = 0;
  std::size_t pairs = 0;

  ordered_json to_json() const;
};

struct ExtractResult {
  Corpus corpus;
  ExtractSummary summary;
};

// Streams each archive in order, keeps the first response per URL, extracts
// JSON-LD FAQ items, filters, tags languages per pair and groups into pages.
ExtractResult extract_corpus(std::span<const fs::path> warcs, const LanguageClassifier& classifier,
                             const AssembleOptions& options, unsigned threads = 1);

LanguageClassifier make_classifier(const PipelineConfig& config);

// ---- stages --------------------------------------------------------------
// Each stage reads its inputs from config.paths, writes its artifacts, and
// writes a "<artifact>.meta.json" sidecar recording the seeds and settings.

ExtractSummary run_extract(const PipelineConfig& config);
DedupReport run_dedup(const PipelineConfig& config);
SplitManifest run_split(const PipelineConfig& config);
std::vector<TrainingBatch> run_batch(const PipelineConfig& config);
TrainResult run_train(const PipelineConfig& config);
EvalReport run_eval(const PipelineConfig& config);

// Per-language pairs/pages/domains table and the pairs-per-page histogram.
void run_stats(const PipelineConfig& config, std::ostream& out);

// One JSON line per answer, best first.
void run_rank(const PipelineConfig& config, const std::string& page_id, const std::string& query,
              std::size_t top, std::ostream& out);

// Pages evaluated under the configured subset.
std::vector<FaqPage> eval_pages(const PipelineConfig& config, const Corpus& corpus);

void write_meta(const fs::path& artifact, const std::string& stage, const ordered_json& settings);

ordered_json to_json(const LshConfig& config);
ordered_json to_json(const TrainConfig& config);

}  // namespace faqkit
