#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/pipeline/stages.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using darkbanner::pipeline::RunConfig;

std::vector<double> parse_rate_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::vector<int> parse_count_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dark-pattern detection pipeline for cookie banners"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string input;
    std::string out_dir;
    std::uint64_t seed = 0;
    int seeds = 0;
    double train_fraction = 0.0;
    int k = 0;
    std::string grid_rates;
    std::string grid_estimators;
    int cv_folds = 0;
    std::string lexicon;
    std::string provider;
    std::string tristate_map;
    std::string column_map;
    bool force = false;

    auto* opt_config = app.add_option("--config", config_path, "key=value config file");
    auto* opt_input = app.add_option("--input", input, "corpus CSV path");
    auto* opt_out = app.add_option("--out", out_dir, "output directory");
    auto* opt_seed = app.add_option("--seed", seed, "base random seed (default 42)");
    auto* opt_seeds = app.add_option("--seeds", seeds, "seed count for the multi-seed summary");
    auto* opt_fraction =
        app.add_option("--train-fraction", train_fraction, "training fraction (default 2/3)");
    auto* opt_k = app.add_option("--k", k, "cluster count (default 6)");
    auto* opt_rates =
        app.add_option("--grid-rates", grid_rates, "comma-separated learning rates");
    auto* opt_counts = app.add_option("--grid-estimators", grid_estimators,
                                      "comma-separated estimator counts");
    auto* opt_folds = app.add_option("--cv-folds", cv_folds, "cross-validation folds");
    auto* opt_lexicon = app.add_option("--lexicon", lexicon, "sentiment lexicon TSV");
    auto* opt_provider =
        app.add_option("--provider", provider, "text provider: offline or external");
    auto* opt_tristate = app.add_option("--tristate-map", tristate_map, "tri-state table TSV");
    auto* opt_colmap = app.add_option("--column-map", column_map, "column mapping TSV");
    auto* opt_force = app.add_flag("--force", force, "overwrite existing outputs");

    auto* cmd_clean = app.add_subcommand("clean", "load, clean and label the corpus");
    auto* cmd_cluster = app.add_subcommand("cluster", "embed and cluster 'not yes' phrases");
    auto* cmd_train = app.add_subcommand("train", "grid-search and train the five classifiers");
    auto* cmd_evaluate = app.add_subcommand("evaluate", "score the models and write the report");
    auto* cmd_run_all = app.add_subcommand("run-all", "all stages in sequence");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig config;
        if (opt_config->count() > 0) {
            config = RunConfig::from_kv_text(darkbanner::core::read_text_file(config_path));
        }
        if (opt_input->count() > 0) config.input_csv = input;
        if (opt_out->count() > 0) config.output_dir = out_dir;
        if (opt_seed->count() > 0) config.seed = seed;
        if (opt_seeds->count() > 0) config.seeds_count = seeds;
        if (opt_fraction->count() > 0) config.train_fraction = train_fraction;
        if (opt_k->count() > 0) config.k_clusters = k;
        if (opt_rates->count() > 0) config.grid_rates = parse_rate_list(grid_rates);
        if (opt_counts->count() > 0) config.grid_estimators = parse_count_list(grid_estimators);
        if (opt_folds->count() > 0) config.cv_folds = cv_folds;
        if (opt_lexicon->count() > 0) config.lexicon_path = lexicon;
        if (opt_provider->count() > 0) config.provider = provider;
        if (opt_tristate->count() > 0) config.tristate_path = tristate_map;
        if (opt_colmap->count() > 0) config.column_map_path = column_map;
        if (opt_force->count() > 0) config.force = force;

        if (cmd_clean->parsed()) {
            darkbanner::pipeline::run_clean(config);
            std::cout << "clean: wrote " << config.output_dir << "/"
                      << darkbanner::pipeline::files::kCleanedCsv << "\n";
        } else if (cmd_cluster->parsed()) {
            darkbanner::pipeline::run_cluster(config);
            std::cout << "cluster: wrote " << config.output_dir << "/"
                      << darkbanner::pipeline::files::kClustersCsv << "\n";
        } else if (cmd_train->parsed()) {
            darkbanner::pipeline::run_train(config);
            std::cout << "train: wrote five model files under " << config.output_dir << "\n";
        } else if (cmd_evaluate->parsed()) {
            darkbanner::pipeline::run_evaluate(config);
            std::cout << "evaluate: wrote " << config.output_dir << "/"
                      << darkbanner::pipeline::files::kReportJson << "\n";
        } else if (cmd_run_all->parsed()) {
            darkbanner::pipeline::run_all(config);
            std::cout << "run-all: artifacts in " << config.output_dir << "\n";
        }
        return 0;
    } catch (const darkbanner::MissingColumn& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const darkbanner::TooFewPoints& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const darkbanner::SplitMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const darkbanner::OverwriteRefused& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
