#pragma once

#include "darkbanner/dataset/record.hpp"
#include "darkbanner/pipeline/train.hpp"
#include "darkbanner/trees/grid_search.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace darkbanner::pipeline {

// Effective configuration of one run. Defaults reproduce the reference
// setup: seed 42, 10 evaluation seeds, a 2/3 split, 6 clusters, and the
// 6-rate x 7-count hyperparameter grid with 3-fold CV.
struct RunConfig {
    std::string input_csv;
    std::string output_dir;
    std::uint64_t seed = 42;
    int seeds_count = 10;
    double train_fraction = 2.0 / 3.0;
    int k_clusters = 6;
    std::vector<double> grid_rates{0.15, 0.1, 0.05, 0.01, 0.005, 0.001};
    std::vector<int> grid_estimators{10, 15, 20, 25, 30, 35, 40};
    int cv_folds = 3;
    std::string provider = "offline";  // "offline" | "external"
    std::string provider_endpoint;     // empty: DARKBANNER_TEXT_ENDPOINT
    std::string provider_key;          // empty: DARKBANNER_TEXT_KEY
    bool provider_fallback = true;
    std::string lexicon_path;     // empty: built-in copy of data/sentiment_lexicon.tsv
    std::string tristate_path;    // empty: built-in copy of data/tristate_map.tsv
    std::string column_map_path;  // empty: default headers
    int importance_trees = 100;
    bool force = false;

    trees::HyperGrid hyper_grid() const;

    // Flat key=value form mirroring the CLI flags; lossless round-trip.
    std::string to_kv_text() const;
    static RunConfig from_kv_text(const std::string& text);
    // FNV-1a over the canonical key=value text, as "0x" + 16 hex digits.
    std::string config_hash() const;
};

// Output file names inside RunConfig::output_dir.
namespace files {
inline constexpr const char* kCleanedCsv = "cleaned.csv";
inline constexpr const char* kLoadReport = "load_report.json";
inline constexpr const char* kClustersCsv = "clusters.csv";
inline constexpr const char* kCentroidsJson = "centroids.json";
inline constexpr const char* kTrainSummary = "train_summary.json";
inline constexpr const char* kReportJson = "report.json";
inline constexpr const char* kAccuracyCsv = "accuracy.csv";
inline constexpr const char* kConfusionCsv = "confusion.csv";
inline constexpr const char* kImportancesCsv = "importances.csv";
inline constexpr const char* kRunConfig = "run_config.ini";
std::string model_json(dataset::Pattern pattern);
}  // namespace files

// Stage entry points; each writes its artifacts under output_dir and
// refuses to overwrite its own outputs unless force is set. Errors surface
// as exceptions; the CLI maps them onto exit codes.
void run_clean(const RunConfig& config);
void run_cluster(const RunConfig& config);
void run_train(const RunConfig& config);
void run_evaluate(const RunConfig& config);
void run_all(const RunConfig& config);

// Corpus + features as every stage past clean sees them.
struct CorpusFeatures {
    std::vector<dataset::BannerRecord> records;
    std::vector<dataset::LabelSet> labels;
    std::vector<int> cluster_ids;
    std::vector<FeatureVector> vectors;
    // original -> translated, recorded only for the external provider so
    // runs stay replayable without the service.
    std::map<std::string, std::string> comment_translations;
};

// Shared by train/evaluate so both encode the corpus identically.
CorpusFeatures load_corpus_features(const RunConfig& config);

std::string format_double(double v);

}  // namespace darkbanner::pipeline
