#include "darkbanner/pipeline/stages.hpp"

#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/embed/cluster.hpp"
#include "darkbanner/text/provider.hpp"
#include "darkbanner/trees/serialize.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fcntl.h>
#include <filesystem>
#include <map>
#include <sstream>
#include <unistd.h>

namespace darkbanner::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    const auto result = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, result.ptr);
}

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto result = std::from_chars(s.data(), s.data() + s.size(), v);
    if (result.ec != std::errc{} || result.ptr != s.data() + s.size()) {
        throw ParseError("bad number: " + s);
    }
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out.push_back(',');
        out += items[i];
    }
    return out;
}

// Holds <out>/.darkbanner.lock for the duration of a stage.
class OutputLock {
public:
    explicit OutputLock(const fs::path& dir) : path_(dir / ".darkbanner.lock") {
        fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd_ < 0) {
            throw IoError("output directory is locked by another run: " + path_.string());
        }
    }
    ~OutputLock() {
        if (fd_ >= 0) {
            ::close(fd_);
            ::unlink(path_.c_str());
        }
    }
    OutputLock(const OutputLock&) = delete;
    OutputLock& operator=(const OutputLock&) = delete;

private:
    fs::path path_;
    int fd_ = -1;
};

fs::path out_path(const RunConfig& config, const char* name) {
    return fs::path(config.output_dir) / name;
}

void prepare_output_dir(const RunConfig& config) {
    if (config.output_dir.empty()) throw IoError("output directory not set");
    fs::create_directories(config.output_dir);
}

void refuse_overwrite(const RunConfig& config, const std::vector<std::string>& names) {
    if (config.force) return;
    for (const auto& name : names) {
        const auto path = fs::path(config.output_dir) / name;
        if (fs::exists(path)) throw OverwriteRefused(path.string());
    }
}

std::string provenance_comment(const RunConfig& config) {
    return "# config_hash=" + config.config_hash() + " seed=" + std::to_string(config.seed) +
           "\n";
}

json base_json(const RunConfig& config) {
    json j;
    j["format_version"] = 1;
    j["config_hash"] = config.config_hash();
    j["seed"] = config.seed;
    return j;
}

void write_json(const RunConfig& config, const char* name, const json& j) {
    core::write_text_file(out_path(config, name).string(), j.dump(2) + "\n");
}

void write_run_config(const RunConfig& config) {
    core::write_text_file(out_path(config, files::kRunConfig).string(),
                          provenance_comment(config) + config.to_kv_text());
}

dataset::TriStateTable tristate_table(const RunConfig& config) {
    return config.tristate_path.empty() ? dataset::TriStateTable::builtin()
                                        : dataset::TriStateTable::from_file(config.tristate_path);
}

text::Lexicon lexicon_for(const RunConfig& config) {
    return config.lexicon_path.empty() ? text::Lexicon::builtin()
                                       : text::Lexicon::from_file(config.lexicon_path);
}

text::ProviderConfig provider_for(const RunConfig& config) {
    if (config.provider == "external") {
        auto p = text::ProviderConfig::external(config.provider_endpoint, config.provider_key);
        p.fallback_to_offline = config.provider_fallback;
        return p;
    }
    return text::ProviderConfig::offline();
}

struct CleanedCorpus {
    std::vector<dataset::BannerRecord> records;
    std::vector<dataset::LabelSet> labels;
};

CleanedCorpus load_cleaned(const RunConfig& config) {
    const auto path = out_path(config, files::kCleanedCsv);
    if (!fs::exists(path)) {
        throw IoError("missing " + path.string() + "; run the clean stage first");
    }
    // The cleaned file always uses the canonical headers.
    auto loaded = dataset::load_raw_csv(path.string());
    const auto table = tristate_table(config);
    CleanedCorpus corpus;
    corpus.records.reserve(loaded.records.size());
    for (auto& rec : loaded.records) {
        corpus.records.push_back(dataset::clean_record(rec, table));
        corpus.labels.push_back(dataset::resolve_labels(corpus.records.back().annotations));
    }
    return corpus;
}

const std::vector<std::string>& cleaned_headers() {
    static const std::vector<std::string> headers = [] {
        std::vector<std::string> h{
            "siteid", "country", "type", "widgetlevel", "nameofnotyesoption", "location",
            "contentblocking", "optionswordscount", "clickstorejecttall", "iscookieusedlisted",
            "thirdparty", "siteworkafterrejectingcoookies", "clarityofoptions",
            "notyesvisiblity"};
        for (const auto p : dataset::kPatterns) {
            h.push_back(dataset::pattern_name(p) + "_r1");
            h.push_back(dataset::pattern_name(p) + "_r2");
        }
        return h;
    }();
    return headers;
}

std::string cleaned_csv_text(const RunConfig& config,
                             const std::vector<dataset::BannerRecord>& records) {
    std::string out = provenance_comment(config);
    out += core::format_csv_row(cleaned_headers());
    for (const auto& rec : records) {
        std::vector<std::string> row{
            rec.site_id,
            rec.country,
            rec.site_type,
            rec.widget_level_raw,
            rec.not_yes_text,
            rec.location_raw,
            dataset::tristate_name(rec.content_blocking),
            rec.options_words_count ? std::to_string(*rec.options_words_count) : "",
            rec.clicks_to_reject_all ? std::to_string(*rec.clicks_to_reject_all) : "",
            rec.cookie_listing_comment,
            rec.third_party_raw,
            dataset::tristate_name(rec.works_after_reject),
            rec.clarity_comment,
            rec.not_yes_visibility_raw,
        };
        for (const auto& pair : rec.annotations) {
            row.push_back(pair.a == dataset::Flag::present ? "yes" : "");
            row.push_back(pair.b == dataset::Flag::present ? "yes" : "");
        }
        out += core::format_csv_row(row);
    }
    return out;
}

json histogram_json(const std::array<std::array<std::size_t, 3>, 5>& hist) {
    json j;
    for (std::size_t p = 0; p < 5; ++p) {
        j[dataset::pattern_name(dataset::kPatterns[p])] = hist[p];
    }
    return j;
}

std::vector<int> read_cluster_ids(const RunConfig& config, std::size_t expected_rows) {
    const auto path = out_path(config, files::kClustersCsv);
    if (!fs::exists(path)) {
        throw IoError("missing " + path.string() + "; run the cluster stage first");
    }
    const auto table = core::read_csv_file(path.string());
    if (table.rows.size() != expected_rows) {
        throw ShapeMismatch("cluster file has " + std::to_string(table.rows.size()) +
                            " rows for a corpus of " + std::to_string(expected_rows));
    }
    const int id_col = table.column_index("cluster_id");
    if (id_col < 0) throw MissingColumn("cluster_id");
    std::vector<int> ids;
    ids.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        ids.push_back(static_cast<int>(parse_double(row[static_cast<std::size_t>(id_col)])));
    }
    return ids;
}

struct SeedRun {
    dataset::SplitIndices split;
    EncodedMatrix matrix;
    std::array<TrainedPattern, 5> trained;
    std::array<PatternEvaluation, 5> evaluations;
};

SeedRun train_and_evaluate_for_seed(const RunConfig& config, const CorpusFeatures& features,
                                    std::uint64_t seed) {
    SeedRun run;
    run.split =
        dataset::split_train_test(features.vectors.size(), config.train_fraction, seed);
    run.matrix = encode_features(features.vectors, run.split.train_ids, config.k_clusters);
    run.trained = train_all(run.matrix, features.labels, run.split, config.hyper_grid(), seed);
    run.evaluations = evaluate(run.trained, run.matrix, features.labels, run.split);
    return run;
}

}  // namespace

trees::HyperGrid RunConfig::hyper_grid() const {
    trees::HyperGrid grid;
    grid.learning_rates = grid_rates;
    grid.n_estimators_options = grid_estimators;
    grid.cv_folds = cv_folds;
    return grid;
}

std::string RunConfig::to_kv_text() const {
    std::map<std::string, std::string> kv;
    kv["input"] = input_csv;
    kv["out"] = output_dir;
    kv["seed"] = std::to_string(seed);
    kv["seeds"] = std::to_string(seeds_count);
    kv["train-fraction"] = format_double(train_fraction);
    kv["k"] = std::to_string(k_clusters);
    {
        std::vector<std::string> rates;
        for (const double r : grid_rates) rates.push_back(format_double(r));
        kv["grid-rates"] = join_list(rates);
    }
    {
        std::vector<std::string> counts;
        for (const int n : grid_estimators) counts.push_back(std::to_string(n));
        kv["grid-estimators"] = join_list(counts);
    }
    kv["cv-folds"] = std::to_string(cv_folds);
    kv["provider"] = provider;
    kv["provider-endpoint"] = provider_endpoint;
    kv["provider-key"] = provider_key;
    kv["provider-fallback"] = provider_fallback ? "true" : "false";
    kv["lexicon"] = lexicon_path;
    kv["tristate-map"] = tristate_path;
    kv["column-map"] = column_map_path;
    kv["importance-trees"] = std::to_string(importance_trees);
    kv["force"] = force ? "true" : "false";

    std::string out;
    for (const auto& [key, value] : kv) out += key + "=" + value + "\n";
    return out;
}

RunConfig RunConfig::from_kv_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "input") config.input_csv = value;
        else if (key == "out") config.output_dir = value;
        else if (key == "seed") config.seed = std::stoull(value);
        else if (key == "seeds") config.seeds_count = std::stoi(value);
        else if (key == "train-fraction") config.train_fraction = parse_double(value);
        else if (key == "k") config.k_clusters = std::stoi(value);
        else if (key == "grid-rates") {
            config.grid_rates.clear();
            for (const auto& item : split_list(value)) config.grid_rates.push_back(parse_double(item));
        } else if (key == "grid-estimators") {
            config.grid_estimators.clear();
            for (const auto& item : split_list(value)) config.grid_estimators.push_back(std::stoi(item));
        } else if (key == "cv-folds") config.cv_folds = std::stoi(value);
        else if (key == "provider") config.provider = value;
        else if (key == "provider-endpoint") config.provider_endpoint = value;
        else if (key == "provider-key") config.provider_key = value;
        else if (key == "provider-fallback") config.provider_fallback = value == "true";
        else if (key == "lexicon") config.lexicon_path = value;
        else if (key == "tristate-map") config.tristate_path = value;
        else if (key == "column-map") config.column_map_path = value;
        else if (key == "importance-trees") config.importance_trees = std::stoi(value);
        else if (key == "force") config.force = value == "true";
        else throw ParseError("unknown config key: " + key);
    }
    return config;
}

std::string RunConfig::config_hash() const {
    const std::string text = to_kv_text();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : text) h = (h ^ c) * 0x100000001B3ULL;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace files {
std::string model_json(dataset::Pattern pattern) {
    return "model_" + dataset::pattern_name(pattern) + ".json";
}
}  // namespace files

void run_clean(const RunConfig& config) {
    prepare_output_dir(config);
    OutputLock lock(config.output_dir);
    refuse_overwrite(config, {files::kCleanedCsv, files::kLoadReport});

    const auto columns = config.column_map_path.empty()
                             ? dataset::ColumnMap::defaults()
                             : dataset::ColumnMap::from_file(config.column_map_path);
    auto loaded = dataset::load_raw_csv(config.input_csv, columns);
    const auto table = tristate_table(config);

    std::vector<dataset::BannerRecord> cleaned;
    std::vector<dataset::LabelSet> labels;
    cleaned.reserve(loaded.records.size());
    for (std::size_t i = 0; i < loaded.records.size(); ++i) {
        cleaned.push_back(dataset::clean_record(loaded.records[i], table, &loaded.report,
                                                loaded.row_lines[i]));
        labels.push_back(dataset::resolve_labels(cleaned.back().annotations));
    }
    loaded.report.tristate_version = table.version();
    loaded.report.provider_kind = config.provider;

    core::write_text_file(out_path(config, files::kCleanedCsv).string(),
                          cleaned_csv_text(config, cleaned));

    json report = base_json(config);
    report["rows"] = loaded.report.rows;
    report["tristate_version"] = loaded.report.tristate_version;
    report["provider"] = loaded.report.provider_kind;
    report["label_histogram"] = histogram_json(dataset::label_histogram(labels));
    auto cells_json = [](const std::vector<dataset::LoadReport::Cell>& cells) {
        json arr = json::array();
        for (const auto& cell : cells) {
            arr.push_back({{"line", cell.line}, {"column", cell.column}, {"value", cell.value}});
        }
        return arr;
    };
    report["malformed_cells"] = cells_json(loaded.report.malformed_cells);
    report["unrecognized_marks"] = cells_json(loaded.report.unrecognized_marks);
    write_json(config, files::kLoadReport, report);
    write_run_config(config);
}

void run_cluster(const RunConfig& config) {
    prepare_output_dir(config);
    OutputLock lock(config.output_dir);
    refuse_overwrite(config, {files::kClustersCsv, files::kCentroidsJson});

    const auto corpus = load_cleaned(config);
    const auto provider = provider_for(config);
    const bool external = provider.kind == text::ProviderConfig::Kind::external;
    std::vector<std::string> phrases;
    std::map<std::string, std::string> translations;
    phrases.reserve(corpus.records.size());
    for (const auto& rec : corpus.records) {
        phrases.push_back(text::translate(rec.not_yes_text, provider));
        if (external) translations[rec.not_yes_text] = phrases.back();
    }

    const auto clustering =
        embed::cluster_phrases(phrases, static_cast<std::size_t>(config.k_clusters), config.seed);

    std::string csv = provenance_comment(config);
    csv += "phrase,cluster_id,x,y\n";
    for (const auto& a : clustering.assignments) {
        csv += core::format_csv_row({a.phrase, std::to_string(a.cluster_id), format_double(a.x),
                                     format_double(a.y)});
    }
    core::write_text_file(out_path(config, files::kClustersCsv).string(), csv);

    json centroids = base_json(config);
    centroids["k"] = clustering.kmeans.k;
    centroids["inertia"] = clustering.kmeans.inertia;
    centroids["iterations_run"] = clustering.kmeans.iterations_run;
    centroids["centroids"] = clustering.kmeans.centroids;
    json xy = json::array();
    for (const auto& [x, y] : clustering.centroid_xy) xy.push_back({x, y});
    centroids["centroid_xy"] = std::move(xy);
    centroids["pca_explained_variance"] = clustering.pca.explained_variance;
    write_json(config, files::kCentroidsJson, centroids);
    if (external) {
        json log = base_json(config);
        log["translations"] = translations;
        write_json(config, "translations_phrases.json", log);
    }
    write_run_config(config);
}

CorpusFeatures load_corpus_features(const RunConfig& config) {
    auto corpus = load_cleaned(config);
    CorpusFeatures features;
    features.records = std::move(corpus.records);
    features.labels = std::move(corpus.labels);
    features.cluster_ids = read_cluster_ids(config, features.records.size());

    const auto provider = provider_for(config);
    const auto lexicon = lexicon_for(config);
    const bool external = provider.kind == text::ProviderConfig::Kind::external;
    features.vectors.reserve(features.records.size());
    for (std::size_t i = 0; i < features.records.size(); ++i) {
        const auto& rec = features.records[i];
        const std::string clarity_text = text::translate(rec.clarity_comment, provider);
        const std::string listing_text = text::translate(rec.cookie_listing_comment, provider);
        if (external) {
            features.comment_translations[rec.clarity_comment] = clarity_text;
            features.comment_translations[rec.cookie_listing_comment] = listing_text;
        }
        const auto clarity = text::score_sentiment(clarity_text, lexicon, provider);
        const auto listing = text::score_sentiment(listing_text, lexicon, provider);
        features.vectors.push_back(
            build_feature_vector(rec, features.cluster_ids[i], clarity, listing));
    }
    return features;
}

void run_train(const RunConfig& config) {
    prepare_output_dir(config);
    OutputLock lock(config.output_dir);
    std::vector<std::string> outputs{files::kTrainSummary};
    for (const auto p : dataset::kPatterns) outputs.push_back(files::model_json(p));
    refuse_overwrite(config, outputs);

    const auto features = load_corpus_features(config);
    const auto split = dataset::split_train_test(features.vectors.size(), config.train_fraction,
                                                 config.seed);
    const auto matrix = encode_features(features.vectors, split.train_ids, config.k_clusters);
    const auto trained = train_all(matrix, features.labels, split, config.hyper_grid(),
                                   config.seed);

    json summary = base_json(config);
    summary["split_fingerprint"] = dataset::split_fingerprint(split);
    summary["train_ids"] = split.train_ids;
    summary["test_ids"] = split.test_ids;
    summary["train_fraction"] = config.train_fraction;

    for (const auto& tp : trained) {
        json model = trees::gbt_to_json(tp.model);
        json prov;
        prov["pattern"] = dataset::pattern_name(tp.pattern);
        prov["seed"] = config.seed;
        prov["config_hash"] = config.config_hash();
        prov["split_fingerprint"] = tp.split_fingerprint;
        prov["chosen_learning_rate"] = tp.grid.best_learning_rate;
        prov["chosen_n_estimators"] = tp.grid.best_n_estimators;
        prov["cv_accuracy"] = tp.grid.best_accuracy;
        prov["small_classes"] = tp.grid.small_classes;
        json cells = json::array();
        for (const auto& cell : tp.grid.cells) {
            cells.push_back({{"learning_rate", cell.learning_rate},
                             {"n_estimators", cell.n_estimators},
                             {"mean_accuracy", cell.mean_accuracy}});
        }
        prov["grid_cells"] = std::move(cells);
        model["provenance"] = std::move(prov);
        core::write_text_file(out_path(config, files::model_json(tp.pattern).c_str()).string(),
                              model.dump(2) + "\n");

        summary["patterns"][dataset::pattern_name(tp.pattern)] = {
            {"learning_rate", tp.grid.best_learning_rate},
            {"n_estimators", tp.grid.best_n_estimators},
            {"cv_accuracy", tp.grid.best_accuracy},
            {"degenerate", tp.model.degenerate},
        };
    }
    write_json(config, files::kTrainSummary, summary);
    if (!features.comment_translations.empty()) {
        json log = base_json(config);
        log["translations"] = features.comment_translations;
        write_json(config, "translations_comments.json", log);
    }
    write_run_config(config);
}

void run_evaluate(const RunConfig& config) {
    prepare_output_dir(config);
    OutputLock lock(config.output_dir);
    refuse_overwrite(config, {files::kReportJson, files::kAccuracyCsv, files::kConfusionCsv,
                              files::kImportancesCsv});

    const auto features = load_corpus_features(config);
    const auto split = dataset::split_train_test(features.vectors.size(), config.train_fraction,
                                                 config.seed);
    const auto matrix = encode_features(features.vectors, split.train_ids, config.k_clusters);

    std::array<TrainedPattern, 5> trained;
    for (std::size_t p = 0; p < dataset::kPatterns.size(); ++p) {
        const auto pattern = dataset::kPatterns[p];
        const auto path = out_path(config, files::model_json(pattern).c_str());
        if (!fs::exists(path)) {
            throw IoError("missing " + path.string() + "; run the train stage first");
        }
        const json j = json::parse(core::read_text_file(path.string()));
        trained[p].pattern = pattern;
        trained[p].model = trees::gbt_from_json(j);
        const auto& prov = j.at("provenance");
        trained[p].split_fingerprint = prov.at("split_fingerprint").get<std::uint64_t>();
        trained[p].grid.best_learning_rate = prov.at("chosen_learning_rate").get<double>();
        trained[p].grid.best_n_estimators = prov.at("chosen_n_estimators").get<int>();
        trained[p].grid.best_accuracy = prov.at("cv_accuracy").get<double>();
        trained[p].grid.small_classes = prov.at("small_classes").get<std::vector<int>>();
    }

    const auto evaluations = evaluate(trained, matrix, features.labels, split);

    // Multi-seed summary: seed + i re-runs the full split/train/test pipeline.
    std::array<std::vector<double>, 5> seed_accuracies;
    std::vector<std::uint64_t> seeds;
    for (int i = 0; i < std::max(1, config.seeds_count); ++i) {
        seeds.push_back(config.seed + static_cast<std::uint64_t>(i));
    }
    for (std::size_t p = 0; p < 5; ++p) {
        seed_accuracies[p].push_back(evaluations[p].weighted_accuracy);
    }
    for (std::size_t i = 1; i < seeds.size(); ++i) {
        const auto run = train_and_evaluate_for_seed(config, features, seeds[i]);
        for (std::size_t p = 0; p < 5; ++p) {
            seed_accuracies[p].push_back(run.evaluations[p].weighted_accuracy);
        }
    }

    json report = base_json(config);
    report["provider"] = config.provider;
    report["label_histogram"] = histogram_json(dataset::label_histogram(features.labels));
    report["split"] = {{"train_ids", split.train_ids},
                       {"test_ids", split.test_ids},
                       {"train_fraction", config.train_fraction},
                       {"fingerprint", dataset::split_fingerprint(split)}};
    report["seeds"] = seeds;

    std::string accuracy_csv = provenance_comment(config);
    accuracy_csv +=
        "pattern,weighted_accuracy,majority_baseline,multi_seed_mean,multi_seed_stddev,"
        "chosen_learning_rate,chosen_n_estimators,degenerate\n";
    std::string confusion_csv = provenance_comment(config);
    confusion_csv += "pattern,actual,predicted,ratio\n";
    std::string importances_csv = provenance_comment(config);
    importances_csv += "pattern,feature,importance\n";

    for (std::size_t p = 0; p < 5; ++p) {
        const auto pattern = dataset::kPatterns[p];
        const auto& name = dataset::pattern_name(pattern);
        const auto& eval = evaluations[p];

        const auto& values = seed_accuracies[p];
        double mean = 0.0;
        for (const double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (const double v : values) var += (v - mean) * (v - mean);
        const double stddev =
            values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;

        const auto importances = pattern_importances(matrix, features.labels, split, pattern,
                                                     config.seed, config.importance_trees);

        json pj;
        pj["weighted_accuracy"] = eval.weighted_accuracy;
        pj["majority_baseline"] = eval.majority_baseline;
        pj["test_class_counts"] = eval.test_class_counts;
        pj["confusion"] = eval.confusion.rows;
        pj["confusion_empty_rows"] = eval.confusion.empty_row;
        pj["chosen_learning_rate"] = eval.chosen_learning_rate;
        pj["chosen_n_estimators"] = eval.chosen_n_estimators;
        pj["degenerate"] = eval.degenerate;
        pj["small_classes"] = eval.small_classes;
        pj["multi_seed"] = {{"values", values}, {"mean", mean}, {"stddev", stddev}};
        json imp;
        for (const auto& [feature, value] : importances) imp[feature] = value;
        pj["feature_importances"] = std::move(imp);
        report["patterns"][name] = std::move(pj);

        accuracy_csv += core::format_csv_row(
            {name, format_double(eval.weighted_accuracy), format_double(eval.majority_baseline),
             format_double(mean), format_double(stddev),
             format_double(eval.chosen_learning_rate), std::to_string(eval.chosen_n_estimators),
             eval.degenerate ? "true" : "false"});
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t q = 0; q < 3; ++q) {
                confusion_csv += core::format_csv_row({name, std::to_string(a), std::to_string(q),
                                                       format_double(eval.confusion.rows[a][q])});
            }
        }
        for (const auto& [feature, value] : importances) {
            importances_csv += core::format_csv_row({name, feature, format_double(value)});
        }
    }

    write_json(config, files::kReportJson, report);
    core::write_text_file(out_path(config, files::kAccuracyCsv).string(), accuracy_csv);
    core::write_text_file(out_path(config, files::kConfusionCsv).string(), confusion_csv);
    core::write_text_file(out_path(config, files::kImportancesCsv).string(), importances_csv);
    write_run_config(config);
}

void run_all(const RunConfig& config) {
    run_clean(config);
    run_cluster(config);
    run_train(config);
    run_evaluate(config);
}

}  // namespace darkbanner::pipeline
