#include "darkbanner/trees/grid_search.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/parallel.hpp"
#include "darkbanner/core/rng.hpp"

#include <algorithm>
#include <map>

namespace darkbanner::trees {

namespace {

std::vector<std::size_t> stratified_folds(const std::vector<int>& y, int folds,
                                          std::uint64_t seed, std::vector<int>* small_classes) {
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);

    std::vector<std::size_t> fold_of(y.size(), 0);
    core::Rng rng(core::derive_seed(seed, 0xF07D));
    for (auto& [label, members] : by_class) {
        if (members.size() < static_cast<std::size_t>(folds) && small_classes) {
            small_classes->push_back(label);
        }
        for (std::size_t i = members.size() - 1; i > 0; --i) {
            std::swap(members[i], members[rng.uniform_index(i + 1)]);
        }
        for (std::size_t j = 0; j < members.size(); ++j) {
            fold_of[members[j]] = j % static_cast<std::size_t>(folds);
        }
    }
    return fold_of;
}

// Validation accuracy after each checkpoint stage count, from one fit at the
// largest count. Scores accumulate exactly as predict_gbt would.
std::vector<double> staged_accuracies(const GbtModel& model, const Matrix& X_val,
                                      const std::vector<int>& y_val,
                                      const std::vector<int>& checkpoints) {
    const std::size_t K = model.classes.size();
    std::map<int, std::size_t> class_index;
    for (std::size_t c = 0; c < K; ++c) class_index[model.classes[c]] = c;

    std::vector<std::vector<double>> scores(X_val.size(), model.initial_scores);
    std::vector<double> accuracies;
    accuracies.reserve(checkpoints.size());

    auto accuracy_now = [&]() {
        std::size_t correct = 0;
        for (std::size_t i = 0; i < X_val.size(); ++i) {
            std::size_t best = 0;
            for (std::size_t c = 1; c < K; ++c) {
                if (scores[i][c] > scores[i][best]) best = c;
            }
            if (model.classes[best] == y_val[i]) ++correct;
        }
        return X_val.empty() ? 0.0
                             : static_cast<double>(correct) / static_cast<double>(X_val.size());
    };

    std::size_t next = 0;
    for (int stage = 0; stage <= static_cast<int>(model.stages.size()); ++stage) {
        while (next < checkpoints.size() && checkpoints[next] == stage) {
            accuracies.push_back(accuracy_now());
            ++next;
        }
        if (stage == static_cast<int>(model.stages.size())) break;
        const auto& trees = model.stages[static_cast<std::size_t>(stage)];
        for (std::size_t i = 0; i < X_val.size(); ++i) {
            for (std::size_t c = 0; c < K; ++c) {
                scores[i][c] += model.learning_rate * trees[c].predict_value(X_val[i]);
            }
        }
    }
    while (next < checkpoints.size()) {  // degenerate model: no stages fitted
        accuracies.push_back(accuracy_now());
        ++next;
    }
    return accuracies;
}

}  // namespace

GridSearchResult grid_search(const Matrix& X, const std::vector<int>& y, const HyperGrid& grid,
                             std::uint64_t seed, int max_depth, int min_samples_leaf) {
    if (grid.learning_rates.empty() || grid.n_estimators_options.empty()) {
        throw InvalidHyperparameter("empty hyperparameter grid");
    }
    for (double rate : grid.learning_rates) {
        if (rate <= 0.0) throw InvalidHyperparameter("learning rate must be > 0");
    }
    for (int n : grid.n_estimators_options) {
        if (n < 1) throw InvalidHyperparameter("estimator count must be >= 1");
    }
    if (grid.cv_folds < 2) throw InvalidHyperparameter("cv_folds must be >= 2");
    if (X.size() < static_cast<std::size_t>(grid.cv_folds)) {
        throw TooFewSamples(std::to_string(X.size()) + " rows for " +
                            std::to_string(grid.cv_folds) + " folds");
    }

    GridSearchResult result;
    result.fold_of = stratified_folds(y, grid.cv_folds, seed, &result.small_classes);

    std::vector<int> checkpoints = grid.n_estimators_options;
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    const int max_estimators = checkpoints.back();

    const std::size_t n_rates = grid.learning_rates.size();
    const std::size_t n_folds = static_cast<std::size_t>(grid.cv_folds);

    // accuracy_by_unit[rate * folds + fold][checkpoint]
    std::vector<std::vector<double>> accuracy_by_unit(n_rates * n_folds);
    core::parallel_for(n_rates * n_folds, [&](std::size_t unit) {
        const std::size_t rate_idx = unit / n_folds;
        const std::size_t fold = unit % n_folds;

        Matrix X_train;
        std::vector<int> y_train;
        Matrix X_val;
        std::vector<int> y_val;
        for (std::size_t i = 0; i < X.size(); ++i) {
            if (result.fold_of[i] == fold) {
                X_val.push_back(X[i]);
                y_val.push_back(y[i]);
            } else {
                X_train.push_back(X[i]);
                y_train.push_back(y[i]);
            }
        }

        GbtOptions options;
        options.learning_rate = grid.learning_rates[rate_idx];
        options.n_estimators = max_estimators;
        options.max_depth = max_depth;
        options.min_samples_leaf = min_samples_leaf;
        const GbtModel model = fit_gbt(X_train, y_train, options);
        accuracy_by_unit[unit] = staged_accuracies(model, X_val, y_val, checkpoints);
    });

    std::map<int, std::size_t> checkpoint_index;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) checkpoint_index[checkpoints[i]] = i;

    for (std::size_t rate_idx = 0; rate_idx < n_rates; ++rate_idx) {
        for (int n_est : grid.n_estimators_options) {
            double sum = 0.0;
            for (std::size_t fold = 0; fold < n_folds; ++fold) {
                sum += accuracy_by_unit[rate_idx * n_folds + fold][checkpoint_index.at(n_est)];
            }
            result.cells.push_back(GridCell{grid.learning_rates[rate_idx], n_est,
                                            sum / static_cast<double>(n_folds)});
        }
    }

    const GridCell* best = &result.cells.front();
    for (const auto& cell : result.cells) {
        const bool better =
            cell.mean_accuracy > best->mean_accuracy ||
            (cell.mean_accuracy == best->mean_accuracy &&
             (cell.learning_rate < best->learning_rate ||
              (cell.learning_rate == best->learning_rate &&
               cell.n_estimators < best->n_estimators)));
        if (better) best = &cell;
    }
    result.best_learning_rate = best->learning_rate;
    result.best_n_estimators = best->n_estimators;
    result.best_accuracy = best->mean_accuracy;
    return result;
}

}  // namespace darkbanner::trees
