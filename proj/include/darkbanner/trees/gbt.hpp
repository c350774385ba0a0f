#pragma once

#include "darkbanner/trees/tree.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace darkbanner::trees {

struct GbtOptions {
    double learning_rate = 0.01;
    int n_estimators = 30;
    int max_depth = 3;
    int min_samples_leaf = 1;
};

struct GbtModel {
    std::vector<int> classes;            // label codes seen in training, ascending
    std::vector<double> priors;          // class frequency in training
    std::vector<double> initial_scores;  // log priors
    double learning_rate = 0.0;
    int n_estimators = 0;
    int max_depth = 0;
    int min_samples_leaf = 1;
    std::size_t n_features = 0;
    // stages[m][c]: regression tree for class c at stage m, leaves already
    // holding the Newton-step values.
    std::vector<std::vector<DecisionTree>> stages;
    // Mean multinomial deviance on the training set, before any stage and
    // after each stage.
    std::vector<double> train_deviance;
    bool degenerate = false;  // single training class: prior-only predictor
};

struct GbtPrediction {
    std::vector<double> distribution;  // over model.classes, sums to 1
    int label = 0;                     // label code, lowest class on ties
};

// Multinomial-deviance boosting: scores start at log class priors; each
// stage fits one regression tree per class to (one-hot minus softmax), leaf
// values take the standard per-leaf Newton step with the denominator floored
// at 1e-12, and scores move by learning_rate times the leaf value.
// n_estimators = 0 yields the prior predictor. A single-class target yields
// a flagged prior-only model.
GbtModel fit_gbt(const Matrix& X, const std::vector<int>& y, const GbtOptions& options);

GbtPrediction predict_gbt(const GbtModel& model, const std::vector<double>& x);

// Softmax with max-score subtraction; shared with the grid-search scorer.
std::vector<double> softmax(const std::vector<double>& scores);

}  // namespace darkbanner::trees
