#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/core/rng.hpp"
#include "darkbanner/pipeline/features.hpp"
#include "darkbanner/pipeline/metrics.hpp"
#include "darkbanner/pipeline/stages.hpp"
#include "darkbanner/pipeline/train.hpp"
#include "darkbanner/trees/serialize.hpp"

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <thread>

using namespace darkbanner;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = std::string(DARKBANNER_SOURCE_DIR) + "/data/banner_data.csv";

pipeline::FeatureVector random_feature_vector(core::Rng& rng,
                                              const std::vector<std::string>& locations) {
    pipeline::FeatureVector fv;
    fv.notyesclusters = static_cast<int>(rng.uniform_index(6));
    if (rng.uniform() < 0.8) fv.equalwidgetlevel = rng.uniform() < 0.5;
    const char* widgets[] = {"button", "link", "box", "drop-down", "unknown"};
    fv.widgettypelevel = widgets[rng.uniform_index(5)];
    fv.location = locations[rng.uniform_index(locations.size())];
    if (rng.uniform() < 0.8) fv.contentblocking = rng.uniform() < 0.5;
    if (rng.uniform() < 0.9) fv.optionswordscounted = std::floor(rng.uniform(10.0, 600.0));
    if (rng.uniform() < 0.9) fv.clickstorejectall = std::floor(rng.uniform(1.0, 6.0));
    const char* vis[] = {"immediate", "scroll", "unknown"};
    fv.notyesvisibility = vis[rng.uniform_index(3)];
    fv.clarityofoptions = rng.uniform(-1.0, 1.0);
    fv.iscookieusedlisted = rng.uniform(-1.0, 1.0);
    return fv;
}

pipeline::RunConfig scratch_config(const std::string& name) {
    pipeline::RunConfig config;
    config.input_csv = kCorpus;
    config.output_dir = (fs::temp_directory_path() / name).string();
    fs::remove_all(config.output_dir);
    return config;
}

}  // namespace

TEST_CASE("feature vector from the sample record") {
    dataset::BannerRecord raw;
    raw.site_id = "Vice";
    raw.widget_level_raw = "Yes, buttons";
    raw.location_raw = "Middle of page, middle";
    raw.content_blocking_raw = "No";
    raw.options_words_count = 559;
    raw.clicks_to_reject_all = 2;
    raw.not_yes_visibility_raw = "Immediate";
    const auto rec = dataset::clean_record(raw);

    const auto fv = pipeline::build_feature_vector(rec, 3, {0.8, 0.8}, {0.5, 0.5});
    CHECK(fv.notyesclusters == 3);
    CHECK(fv.equalwidgetlevel == true);
    CHECK(fv.widgettypelevel == "button");
    CHECK(fv.location == "middle of page, middle");
    CHECK(fv.contentblocking == false);
    CHECK(fv.optionswordscounted == 559.0);
    CHECK(fv.clickstorejectall == 2.0);
    CHECK(fv.notyesvisibility == "immediate");
    CHECK(fv.clarityofoptions == 0.8);
    CHECK(fv.iscookieusedlisted == 0.5);
}

TEST_CASE("feature vector maps unknowns and empty comments") {
    dataset::BannerRecord raw;
    raw.widget_level_raw = "No, button and link";
    raw.not_yes_visibility_raw = "hover somewhere";
    const auto rec = dataset::clean_record(raw);
    const auto fv = pipeline::build_feature_vector(rec, 0, {0.0, 0.0}, {0.0, 0.0});
    CHECK(fv.location == "unknown");
    CHECK(fv.equalwidgetlevel == false);
    CHECK(fv.widgettypelevel == "button");  // first stem match wins
    CHECK(fv.notyesvisibility == "unknown");
    CHECK(!fv.contentblocking.has_value());
    CHECK(!fv.optionswordscounted.has_value());
    CHECK(fv.clarityofoptions == 0.0);

    dataset::BannerRecord dd;
    dd.widget_level_raw = "No, drop-down menus";
    const auto rec2 = dataset::clean_record(dd);
    CHECK(pipeline::build_feature_vector(rec2, 0, {0, 0}, {0, 0}).widgettypelevel == "drop-down");
}

TEST_CASE("encoding one-hots categoricals and groups sum to one") {
    core::Rng rng(51);
    const std::vector<std::string> locations{"bottom entire", "top entire",
                                             "middle of page, middle", "unknown"};
    std::vector<pipeline::FeatureVector> vectors;
    for (int i = 0; i < 40; ++i) vectors.push_back(random_feature_vector(rng, locations));
    vectors[0].widgettypelevel = "button";

    std::vector<std::size_t> fit_rows;
    for (std::size_t i = 0; i < 30; ++i) fit_rows.push_back(i);
    const auto matrix = pipeline::encode_features(vectors, fit_rows, 6);

    // widgettypelevel one-hot of row 0 is (1,0,0,0,0) over the fixed vocabulary.
    std::vector<double> widget_group;
    for (std::size_t col = 0; col < matrix.column_spec.size(); ++col) {
        if (matrix.column_spec[col].source_feature == "widgettypelevel") {
            widget_group.push_back(matrix.rows[0][col]);
        }
    }
    CHECK(widget_group == std::vector<double>{1, 0, 0, 0, 0});

    for (const auto& row : matrix.rows) {
        std::map<std::string, double> group_sum;
        for (std::size_t col = 0; col < matrix.column_spec.size(); ++col) {
            if (matrix.column_spec[col].kind == "onehot") {
                group_sum[matrix.column_spec[col].source_feature] += row[col];
            }
        }
        REQUIRE(group_sum.size() == 4);  // clusters, widget, location, visibility
        for (const auto& [source, sum] : group_sum) {
            CAPTURE(source);
            CHECK(sum == 1.0);
        }
    }
}

TEST_CASE("encoding imputes the training median and is leakage-free") {
    core::Rng rng(52);
    const std::vector<std::string> locations{"bottom entire", "top entire"};
    std::vector<pipeline::FeatureVector> vectors;
    for (int i = 0; i < 20; ++i) vectors.push_back(random_feature_vector(rng, locations));
    std::vector<std::size_t> fit_rows{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

    // Independent median: sort the present training values, lower middle.
    std::vector<double> present;
    for (const auto r : fit_rows) {
        if (vectors[r].optionswordscounted) present.push_back(*vectors[r].optionswordscounted);
    }
    std::sort(present.begin(), present.end());
    const double expected_median = present[(present.size() - 1) / 2];

    vectors[15].optionswordscounted.reset();
    const auto matrix = pipeline::encode_features(vectors, fit_rows, 6);
    std::size_t words_col = 0;
    for (std::size_t col = 0; col < matrix.column_spec.size(); ++col) {
        if (matrix.column_spec[col].source_feature == "optionswordscounted") words_col = col;
    }
    CHECK(matrix.imputation_values[words_col] == expected_median);
    CHECK(matrix.rows[15][words_col] == expected_median);

    // Changing a non-fit row must not move any training statistic.
    auto mutated = vectors;
    mutated[15].location = "never seen before";
    mutated[15].optionswordscounted = 99999.0;
    const auto matrix2 = pipeline::encode_features(mutated, fit_rows, 6);
    CHECK(matrix2.imputation_values == matrix.imputation_values);
    CHECK(matrix2.location_vocabulary == matrix.location_vocabulary);
    REQUIRE(matrix2.column_spec.size() == matrix.column_spec.size());
    // The unseen location lands on the unknown slot.
    for (std::size_t col = 0; col < matrix2.column_spec.size(); ++col) {
        const auto& spec = matrix2.column_spec[col];
        if (spec.source_feature == "location" && spec.category == "unknown") {
            CHECK(matrix2.rows[15][col] == 1.0);
        }
    }
}

TEST_CASE("corpus median imputation matches an independent computation") {
    auto loaded = dataset::load_raw_csv(kCorpus);
    std::vector<pipeline::FeatureVector> vectors;
    std::vector<double> words;
    const auto split = dataset::split_train_test(loaded.records.size(), 2.0 / 3.0, 42);
    for (auto& raw : loaded.records) {
        const auto rec = dataset::clean_record(raw);
        vectors.push_back(pipeline::build_feature_vector(rec, 0, {0, 0}, {0, 0}));
    }
    for (const auto r : split.train_ids) {
        if (vectors[r].optionswordscounted) words.push_back(*vectors[r].optionswordscounted);
    }
    std::sort(words.begin(), words.end());
    const double expected = words[(words.size() - 1) / 2];

    const auto matrix = pipeline::encode_features(vectors, split.train_ids, 6);
    for (std::size_t col = 0; col < matrix.column_spec.size(); ++col) {
        if (matrix.column_spec[col].source_feature == "optionswordscounted") {
            CHECK(matrix.imputation_values[col] == expected);
        }
    }
}

TEST_CASE("weighted accuracy equals micro accuracy") {
    CHECK(pipeline::weighted_accuracy({0, 1, 2}, {0, 1, 2}) == 1.0);
    CHECK(pipeline::weighted_accuracy({0, 1, 2}, {1, 2, 0}) == 0.0);
    CHECK_THROWS_AS(pipeline::weighted_accuracy({}, {}), EmptyInput);
    CHECK_THROWS_AS(pipeline::weighted_accuracy({0}, {0, 1}), ShapeMismatch);

    core::Rng rng(61);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(50);
        std::vector<int> actual(n);
        std::vector<int> predicted(n);
        std::size_t correct = 0;
        for (std::size_t i = 0; i < n; ++i) {
            actual[i] = static_cast<int>(rng.uniform_index(3));
            predicted[i] = static_cast<int>(rng.uniform_index(3));
            if (actual[i] == predicted[i]) ++correct;
        }
        const double micro = static_cast<double>(correct) / static_cast<double>(n);
        CHECK(pipeline::weighted_accuracy(actual, predicted) ==
              doctest::Approx(micro).epsilon(1e-12));
    }
}

TEST_CASE("a uniform-random predictor scores near one third") {
    core::Rng rng(66);
    const std::size_t n = 30000;
    std::vector<int> actual(n);
    std::vector<int> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
        actual[i] = static_cast<int>(rng.uniform_index(3));
        predicted[i] = static_cast<int>(rng.uniform_index(3));
    }
    CHECK(pipeline::weighted_accuracy(actual, predicted) ==
          doctest::Approx(1.0 / 3.0).epsilon(0.05));
}

TEST_CASE("confusion matrix normalizes rows and flags empty ones") {
    const auto perfect = pipeline::confusion_matrix({0, 1, 2}, {0, 1, 2});
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(perfect.rows[i][j] == (i == j ? 1.0 : 0.0));
        }
        CHECK(!perfect.empty_row[i]);
    }

    const auto partial = pipeline::confusion_matrix({0, 0, 1}, {0, 1, 1});
    CHECK(partial.rows[0][0] == 0.5);
    CHECK(partial.rows[0][1] == 0.5);
    CHECK(partial.rows[1][1] == 1.0);
    CHECK(partial.empty_row[2]);
    CHECK(partial.rows[2] == std::array<double, 3>{0.0, 0.0, 0.0});

    core::Rng rng(62);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.uniform_index(40);
        std::vector<int> actual(n);
        std::vector<int> predicted(n);
        for (std::size_t i = 0; i < n; ++i) {
            actual[i] = static_cast<int>(rng.uniform_index(3));
            predicted[i] = static_cast<int>(rng.uniform_index(3));
        }
        const auto m = pipeline::confusion_matrix(actual, predicted);
        for (std::size_t r = 0; r < 3; ++r) {
            if (m.empty_row[r]) continue;
            CHECK(m.rows[r][0] + m.rows[r][1] + m.rows[r][2] ==
                  doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("train_all and evaluate on a small fixture") {
    core::Rng rng(63);
    const std::size_t n = 24;
    std::vector<pipeline::FeatureVector> vectors;
    std::vector<dataset::LabelSet> labels(n);
    const std::vector<std::string> locations{"top entire", "bottom entire"};
    for (std::size_t i = 0; i < n; ++i) {
        vectors.push_back(random_feature_vector(rng, locations));
        for (std::size_t p = 0; p < 5; ++p) {
            labels[i].codes[p] = static_cast<int>(rng.uniform_index(p == 2 ? 2 : 3));
        }
    }
    const auto split = dataset::split_train_test(n, 0.5, 9);
    const auto matrix = pipeline::encode_features(vectors, split.train_ids, 6);
    trees::HyperGrid grid;
    grid.learning_rates = {0.1, 0.01};
    grid.n_estimators_options = {3, 6};

    const auto models_a = pipeline::train_all(matrix, labels, split, grid, 9);
    const auto models_b = pipeline::train_all(matrix, labels, split, grid, 9);
    for (std::size_t p = 0; p < 5; ++p) {
        CHECK(models_a[p].grid.best_learning_rate == models_b[p].grid.best_learning_rate);
        CHECK(models_a[p].grid.best_n_estimators == models_b[p].grid.best_n_estimators);
        for (const auto r : split.test_ids) {
            CHECK(trees::predict_gbt(models_a[p].model, matrix.rows[r]).label ==
                  trees::predict_gbt(models_b[p].model, matrix.rows[r]).label);
        }
    }

    const auto evals = pipeline::evaluate(models_a, matrix, labels, split);
    for (const auto& eval : evals) {
        CHECK(eval.weighted_accuracy >= 0.0);
        CHECK(eval.weighted_accuracy <= 1.0);
        std::size_t total = 0;
        for (const auto c : eval.test_class_counts) total += c;
        CHECK(total == split.test_ids.size());
    }

    // A model trained on a different split is rejected.
    const auto other_split = dataset::split_train_test(n, 0.5, 10);
    CHECK_THROWS_AS(pipeline::evaluate(models_a, matrix, labels, other_split), SplitMismatch);
}

TEST_CASE("single-class training yields the majority baseline") {
    core::Rng rng(64);
    const std::size_t n = 16;
    std::vector<pipeline::FeatureVector> vectors;
    std::vector<dataset::LabelSet> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        vectors.push_back(random_feature_vector(rng, {"top entire"}));
        for (std::size_t p = 0; p < 5; ++p) labels[i].codes[p] = 0;
        labels[i].codes[1] = static_cast<int>(rng.uniform_index(3));
    }
    const auto split = dataset::split_train_test(n, 0.5, 3);
    const auto matrix = pipeline::encode_features(vectors, split.train_ids, 6);
    trees::HyperGrid grid;
    grid.learning_rates = {0.1};
    grid.n_estimators_options = {3};
    grid.cv_folds = 2;
    const auto models = pipeline::train_all(matrix, labels, split, grid, 3);
    CHECK(models[0].model.degenerate);

    const auto evals = pipeline::evaluate(models, matrix, labels, split);
    CHECK(evals[0].degenerate);
    CHECK(evals[0].weighted_accuracy == evals[0].majority_baseline);
}

TEST_CASE("pattern importances aggregate to the ten features") {
    core::Rng rng(65);
    const std::size_t n = 30;
    std::vector<pipeline::FeatureVector> vectors;
    std::vector<dataset::LabelSet> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        vectors.push_back(random_feature_vector(rng, {"top entire", "bottom entire"}));
        for (std::size_t p = 0; p < 5; ++p) {
            labels[i].codes[p] = static_cast<int>(rng.uniform_index(3));
        }
    }
    const auto split = dataset::split_train_test(n, 0.6, 4);
    const auto matrix = pipeline::encode_features(vectors, split.train_ids, 6);
    const auto importances = pipeline::pattern_importances(matrix, labels, split,
                                                           dataset::Pattern::nagging, 4, 10);
    REQUIRE(importances.size() == pipeline::feature_names().size());
    double sum = 0.0;
    for (const auto& [name, value] : importances) {
        CHECK(value >= 0.0);
        sum += value;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("stage pipeline on the bundled corpus is deterministic") {
    auto config = scratch_config("darkbanner_stage_test");
    config.seeds_count = 1;

    pipeline::run_clean(config);
    pipeline::run_cluster(config);
    pipeline::run_train(config);
    pipeline::run_evaluate(config);

    const auto report_a =
        core::read_text_file(config.output_dir + "/" + pipeline::files::kReportJson);
    const auto clusters_a =
        core::read_text_file(config.output_dir + "/" + pipeline::files::kClustersCsv);

    // Same config into a fresh directory at the same path: byte-identical.
    const std::string moved = config.output_dir + "_keep";
    fs::remove_all(moved);
    fs::rename(config.output_dir, moved);
    pipeline::run_all(config);
    CHECK(core::read_text_file(config.output_dir + "/" + pipeline::files::kReportJson) ==
          report_a);
    CHECK(core::read_text_file(config.output_dir + "/" + pipeline::files::kClustersCsv) ==
          clusters_a);

    // Reruns refuse to overwrite without force.
    CHECK_THROWS_AS(pipeline::run_clean(config), OverwriteRefused);
    config.force = true;
    pipeline::run_clean(config);  // allowed now

    fs::remove_all(config.output_dir);
    fs::remove_all(moved);
}

TEST_CASE("external provider runs record translation provenance") {
    httplib::Server server;
    server.Post("/t", [](const httplib::Request& req, httplib::Response& res) {
        const auto body = nlohmann::json::parse(req.body);
        res.set_content(nlohmann::json{{"text", body.at("text").get<std::string>()}}.dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    auto config = scratch_config("darkbanner_provider_test");
    config.provider = "external";
    config.provider_endpoint = "http://127.0.0.1:" + std::to_string(port) + "/t";
    pipeline::run_clean(config);
    pipeline::run_cluster(config);

    const auto log = nlohmann::json::parse(
        core::read_text_file(config.output_dir + "/translations_phrases.json"));
    CHECK(!log.at("translations").empty());
    // Identity service: recorded output equals input.
    for (const auto& [original, translated] : log.at("translations").items()) {
        CHECK(original == translated.get<std::string>());
    }

    server.stop();
    server_thread.join();
    fs::remove_all(config.output_dir);
}

TEST_CASE("clean stage handles a header-only corpus") {
    auto config = scratch_config("darkbanner_empty_test");
    const std::string input = config.output_dir + "_input.csv";
    core::write_text_file(
        input,
        "siteid,country,type,widgetlevel,nameofnotyesoption,location,contentblocking,"
        "optionswordscount,clickstorejecttall,iscookieusedlisted,thirdparty,"
        "siteworkafterrejectingcoookies,clarityofoptions,notyesvisiblity,"
        "nagging_r1,nagging_r2,obstruction_r1,obstruction_r2,sneaking_r1,sneaking_r2,"
        "interface_interference_r1,interface_interference_r2,forced_action_r1,"
        "forced_action_r2\n");
    config.input_csv = input;
    pipeline::run_clean(config);
    const auto cleaned = core::read_csv_file(config.output_dir + "/cleaned.csv");
    CHECK(cleaned.rows.empty());
    const auto report = nlohmann::json::parse(
        core::read_text_file(config.output_dir + "/" + pipeline::files::kLoadReport));
    CHECK(report.at("rows") == 0);
    fs::remove_all(config.output_dir);
    fs::remove(input);
}

TEST_CASE("model files carry provenance and reload into the same predictions") {
    auto config = scratch_config("darkbanner_modelio_test");
    config.seeds_count = 1;
    pipeline::run_clean(config);
    pipeline::run_cluster(config);
    pipeline::run_train(config);

    const auto features = pipeline::load_corpus_features(config);
    const auto split = dataset::split_train_test(features.vectors.size(), config.train_fraction,
                                                 config.seed);
    const auto matrix = pipeline::encode_features(features.vectors, split.train_ids,
                                                  config.k_clusters);

    for (const auto pattern : dataset::kPatterns) {
        const auto path = config.output_dir + "/" + pipeline::files::model_json(pattern);
        const auto j = nlohmann::json::parse(core::read_text_file(path));
        CHECK(j.at("format_version") == 1);
        CHECK(j.at("provenance").at("seed") == config.seed);
        CHECK(j.at("provenance").at("config_hash") == config.config_hash());
        const auto model = trees::gbt_from_json(j);
        for (const auto r : split.test_ids) {
            const auto p = trees::predict_gbt(model, matrix.rows[r]);
            CHECK(p.label >= 0);
            CHECK(p.label <= 2);
        }
    }
    fs::remove_all(config.output_dir);
}

#ifdef DARKBANNER_CLI_PATH
TEST_CASE("cli exit codes follow the contract") {
    const std::string cli = DARKBANNER_CLI_PATH;
    const auto scratch = (fs::temp_directory_path() / "darkbanner_cli_test").string();
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    auto run = [&](const std::string& args) {
        const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };

    // Missing required column -> 2.
    core::write_text_file(scratch + "/bad.csv", "siteid,country\nX,UK\n");
    CHECK(run("clean --input " + scratch + "/bad.csv --out " + scratch + "/o1") == 2);

    // Too few distinct phrases for k -> 3.
    const std::string corpus = std::string(DARKBANNER_SOURCE_DIR) + "/data/banner_data.csv";
    CHECK(run("clean --input " + corpus + " --out " + scratch + "/o2") == 0);
    CHECK(run("cluster --input " + corpus + " --out " + scratch + "/o2 --k 250") == 3);

    // Overwrite refusal -> 5.
    CHECK(run("clean --input " + corpus + " --out " + scratch + "/o2") == 5);
    CHECK(run("clean --input " + corpus + " --out " + scratch + "/o2 --force") == 0);

    // Evaluating against models from another seed -> 4.
    CHECK(run("cluster --input " + corpus + " --out " + scratch + "/o2") == 0);
    CHECK(run("train --input " + corpus + " --out " + scratch + "/o2 "
              "--grid-rates 0.1 --grid-estimators 3") == 0);
    CHECK(run("evaluate --input " + corpus + " --out " + scratch + "/o2 --seed 43 --seeds 1 "
              "--grid-rates 0.1 --grid-estimators 3") == 4);

    fs::remove_all(scratch);
}
#endif
