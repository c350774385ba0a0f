#pragma once

#include "darkbanner/trees/tree.hpp"

#include <cstdint>
#include <vector>

namespace darkbanner::trees {

struct ForestOptions {
    int n_trees = 100;
    bool bootstrap = true;
    // 0 resolves to floor(sqrt(d)) (at least 1); negative disables subsampling.
    int max_features = 0;
    int max_depth = -1;
    int min_samples_leaf = 1;
    std::uint64_t seed = 42;
};

struct RandomForest {
    std::vector<DecisionTree> trees;
    ForestOptions options;
    std::vector<std::uint64_t> tree_seeds;  // bootstrap + split sampling stream per tree
    int n_classes = 0;
    std::size_t n_samples_trained = 0;
    int resolved_max_features = 0;
};

// Trees train on bootstrap resamples with per-split feature subsampling;
// each tree owns the PRNG stream derived from (seed, tree index), so the
// forest is identical at any parallelism degree.
RandomForest fit_random_forest(const Matrix& X, const std::vector<int>& y,
                               const ForestOptions& options);

// Majority vote with lowest-class-index tie-break.
int predict_forest(const RandomForest& forest, const std::vector<double>& x);

// Mean decrease in impurity, averaged over trees, normalized to sum 1
// (all zeros when no tree ever split).
std::vector<double> feature_importances(const RandomForest& forest);

// Votes only from trees whose bootstrap missed the sample; samples that are
// in-bag everywhere are skipped.
double oob_accuracy(const RandomForest& forest, const Matrix& X, const std::vector<int>& y);

}  // namespace darkbanner::trees
