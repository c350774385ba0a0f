#include "darkbanner/pipeline/train.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/rng.hpp"

#include <algorithm>

namespace darkbanner::pipeline {

namespace {

std::vector<int> pattern_labels(const std::vector<dataset::LabelSet>& labels,
                                dataset::Pattern pattern,
                                const std::vector<std::size_t>& rows) {
    std::vector<int> y;
    y.reserve(rows.size());
    for (const auto r : rows) y.push_back(labels[r][pattern]);
    return y;
}

trees::Matrix gather_rows(const trees::Matrix& all, const std::vector<std::size_t>& rows) {
    trees::Matrix out;
    out.reserve(rows.size());
    for (const auto r : rows) out.push_back(all[r]);
    return out;
}

}  // namespace

std::array<TrainedPattern, 5> train_all(const EncodedMatrix& matrix,
                                        const std::vector<dataset::LabelSet>& labels,
                                        const dataset::SplitIndices& split,
                                        const trees::HyperGrid& grid, std::uint64_t seed) {
    if (matrix.rows.size() != labels.size()) throw ShapeMismatch("matrix vs labels");
    const trees::Matrix X_train = gather_rows(matrix.rows, split.train_ids);
    const std::uint64_t fingerprint = dataset::split_fingerprint(split);

    std::array<TrainedPattern, 5> out;
    for (std::size_t p = 0; p < dataset::kPatterns.size(); ++p) {
        const auto pattern = dataset::kPatterns[p];
        const std::vector<int> y_train = pattern_labels(labels, pattern, split.train_ids);

        TrainedPattern trained;
        trained.pattern = pattern;
        trained.split_fingerprint = fingerprint;
        trained.grid = trees::grid_search(X_train, y_train, grid, seed);

        trees::GbtOptions options;
        options.learning_rate = trained.grid.best_learning_rate;
        options.n_estimators = trained.grid.best_n_estimators;
        trained.model = trees::fit_gbt(X_train, y_train, options);
        out[p] = std::move(trained);
    }
    return out;
}

std::array<PatternEvaluation, 5> evaluate(const std::array<TrainedPattern, 5>& models,
                                          const EncodedMatrix& matrix,
                                          const std::vector<dataset::LabelSet>& labels,
                                          const dataset::SplitIndices& split) {
    const std::uint64_t fingerprint = dataset::split_fingerprint(split);
    for (const auto& trained : models) {
        if (trained.split_fingerprint != fingerprint) {
            throw SplitMismatch("model for " + dataset::pattern_name(trained.pattern) +
                                " was trained on a different split");
        }
    }

    std::array<PatternEvaluation, 5> out;
    for (std::size_t p = 0; p < dataset::kPatterns.size(); ++p) {
        const auto pattern = dataset::kPatterns[p];
        const std::vector<int> y_train = pattern_labels(labels, pattern, split.train_ids);
        const std::vector<int> y_test = pattern_labels(labels, pattern, split.test_ids);

        std::vector<int> predicted;
        predicted.reserve(split.test_ids.size());
        for (const auto r : split.test_ids) {
            predicted.push_back(trees::predict_gbt(models[p].model, matrix.rows[r]).label);
        }

        PatternEvaluation eval;
        eval.weighted_accuracy = weighted_accuracy(y_test, predicted);
        eval.confusion = confusion_matrix(y_test, predicted);
        eval.chosen_learning_rate = models[p].grid.best_learning_rate;
        eval.chosen_n_estimators = models[p].grid.best_n_estimators;
        eval.degenerate = models[p].model.degenerate;
        eval.small_classes = models[p].grid.small_classes;

        // Majority class is learned on the training rows, scored on test.
        std::array<std::size_t, 3> train_counts{};
        for (const int label : y_train) train_counts[static_cast<std::size_t>(label)] += 1;
        std::size_t majority = 0;
        for (std::size_t c = 1; c < 3; ++c) {
            if (train_counts[c] > train_counts[majority]) majority = c;
        }
        std::size_t baseline_correct = 0;
        for (const int label : y_test) {
            eval.test_class_counts[static_cast<std::size_t>(label)] += 1;
            if (static_cast<std::size_t>(label) == majority) ++baseline_correct;
        }
        eval.majority_baseline = y_test.empty()
                                     ? 0.0
                                     : static_cast<double>(baseline_correct) /
                                           static_cast<double>(y_test.size());
        out[p] = std::move(eval);
    }
    return out;
}

std::vector<std::pair<std::string, double>> pattern_importances(
    const EncodedMatrix& matrix, const std::vector<dataset::LabelSet>& labels,
    const dataset::SplitIndices& split, dataset::Pattern pattern, std::uint64_t seed,
    int n_trees) {
    const trees::Matrix X_train = gather_rows(matrix.rows, split.train_ids);
    const std::vector<int> y_train = pattern_labels(labels, pattern, split.train_ids);

    trees::ForestOptions options;
    options.n_trees = n_trees;
    options.seed = core::derive_seed(seed, 0xF0 + static_cast<std::uint64_t>(pattern));
    const trees::RandomForest forest = trees::fit_random_forest(X_train, y_train, options);
    const std::vector<double> per_column = trees::feature_importances(forest);

    std::vector<std::pair<std::string, double>> out;
    for (const auto& name : feature_names()) out.emplace_back(name, 0.0);
    for (std::size_t col = 0; col < per_column.size(); ++col) {
        const auto& source = matrix.column_spec[col].source_feature;
        for (auto& [name, value] : out) {
            if (name == source) {
                value += per_column[col];
                break;
            }
        }
    }
    return out;
}

}  // namespace darkbanner::pipeline
