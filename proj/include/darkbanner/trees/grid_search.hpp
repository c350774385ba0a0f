#pragma once

#include "darkbanner/trees/gbt.hpp"

#include <cstdint>
#include <vector>

namespace darkbanner::trees {

struct HyperGrid {
    std::vector<double> learning_rates;
    std::vector<int> n_estimators_options;
    int cv_folds = 3;
};

struct GridCell {
    double learning_rate = 0.0;
    int n_estimators = 0;
    double mean_accuracy = 0.0;
};

struct GridSearchResult {
    double best_learning_rate = 0.0;
    int best_n_estimators = 0;
    double best_accuracy = 0.0;
    std::vector<GridCell> cells;       // rate-major, estimator-minor
    std::vector<int> small_classes;    // label codes with fewer members than folds
    std::vector<std::size_t> fold_of;  // per training row
};

// Stratified k-fold cross-validation over every grid cell. Classes smaller
// than the fold count are dealt round-robin and flagged. Boosted models are
// prefixes of one another, so each (rate, fold) pair trains once at the
// largest estimator count and scores every checkpoint along the way; the
// per-cell accuracies are identical to independent fits. Best cell: highest
// mean accuracy, ties to the lower rate, then the lower estimator count.
GridSearchResult grid_search(const Matrix& X, const std::vector<int>& y, const HyperGrid& grid,
                             std::uint64_t seed, int max_depth = 3, int min_samples_leaf = 1);

}  // namespace darkbanner::trees
