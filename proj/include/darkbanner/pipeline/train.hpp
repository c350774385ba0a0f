#pragma once

#include "darkbanner/dataset/record.hpp"
#include "darkbanner/pipeline/features.hpp"
#include "darkbanner/pipeline/metrics.hpp"
#include "darkbanner/trees/forest.hpp"
#include "darkbanner/trees/grid_search.hpp"

#include <array>
#include <cstdint>

namespace darkbanner::pipeline {

struct TrainedPattern {
    dataset::Pattern pattern = dataset::Pattern::nagging;
    trees::GbtModel model;
    trees::GridSearchResult grid;
    std::uint64_t split_fingerprint = 0;
};

// Per pattern: grid-search on the training rows only, then refit the best
// cell on the full training rows. Patterns are independent; a single-class
// training target produces a flagged prior-only model.
std::array<TrainedPattern, 5> train_all(const EncodedMatrix& matrix,
                                        const std::vector<dataset::LabelSet>& labels,
                                        const dataset::SplitIndices& split,
                                        const trees::HyperGrid& grid, std::uint64_t seed);

struct PatternEvaluation {
    double weighted_accuracy = 0.0;
    ConfusionMatrix confusion;
    double majority_baseline = 0.0;
    std::array<std::size_t, 3> test_class_counts{};
    double chosen_learning_rate = 0.0;
    int chosen_n_estimators = 0;
    bool degenerate = false;
    std::vector<int> small_classes;
};

// Test-split evaluation for the five trained models. Model provenance must
// match the split (SplitMismatch otherwise).
std::array<PatternEvaluation, 5> evaluate(const std::array<TrainedPattern, 5>& models,
                                          const EncodedMatrix& matrix,
                                          const std::vector<dataset::LabelSet>& labels,
                                          const dataset::SplitIndices& split);

// Mean-decrease-in-impurity importances from a random forest on the training
// rows, summed over each feature's encoded columns (so one value per source
// feature, in feature_names() order).
std::vector<std::pair<std::string, double>> pattern_importances(
    const EncodedMatrix& matrix, const std::vector<dataset::LabelSet>& labels,
    const dataset::SplitIndices& split, dataset::Pattern pattern, std::uint64_t seed,
    int n_trees = 100);

}  // namespace darkbanner::pipeline
