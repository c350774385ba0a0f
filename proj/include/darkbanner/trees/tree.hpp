#pragma once

#include "darkbanner/core/rng.hpp"

#include <cstddef>
#include <vector>

namespace darkbanner::trees {

using Matrix = std::vector<std::vector<double>>;

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> distribution;  // classification leaves, sums to 1
    double value = 0.0;                // regression leaves
    std::size_t n_samples = 0;
};

struct TreeParams {
    int max_depth = -1;  // -1: unlimited
    int min_samples_leaf = 1;
    // 0 keeps the full feature set. Otherwise each split samples this many
    // distinct features from the supplied rng.
    int max_features = 0;
};

// Per-feature row order by (value, row index). Built once per tree, or once
// per boosting run since the feature values stay fixed across stages.
class FeatureOrder {
public:
    explicit FeatureOrder(const Matrix& X);
    const std::vector<std::size_t>& order(std::size_t feature) const { return order_[feature]; }
    std::size_t n_rows() const { return n_rows_; }

private:
    std::vector<std::vector<std::size_t>> order_;
    std::size_t n_rows_ = 0;
};

// Greedy CART. At each node the (feature, threshold) pair with the largest
// impurity decrease wins; candidate thresholds are midpoints of consecutive
// distinct sorted values; ties resolve to the lowest feature index, then the
// lowest threshold; only strictly positive decreases split.
class DecisionTree {
public:
    enum class Mode { classification_gini, regression_mse };

    static DecisionTree fit_classification(const Matrix& X, const std::vector<int>& y,
                                           int n_classes, const TreeParams& params,
                                           core::Rng* rng = nullptr,
                                           const FeatureOrder* presorted = nullptr);
    static DecisionTree fit_regression(const Matrix& X, const std::vector<double>& y,
                                       const TreeParams& params, core::Rng* rng = nullptr,
                                       const FeatureOrder* presorted = nullptr);

    int predict_class(const std::vector<double>& x) const;
    const std::vector<double>& predict_distribution(const std::vector<double>& x) const;
    double predict_value(const std::vector<double>& x) const;
    std::size_t leaf_index(const std::vector<double>& x) const;

    Mode mode() const { return mode_; }
    std::size_t n_features() const { return n_features_; }
    int n_classes() const { return n_classes_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::vector<TreeNode>& mutable_nodes() { return nodes_; }
    // Raw mean-decrease-in-impurity accumulator, weighted by node fraction.
    const std::vector<double>& raw_importances() const { return raw_importances_; }

    // Used by deserialization.
    static DecisionTree from_parts(Mode mode, std::size_t n_features, int n_classes,
                                   std::vector<TreeNode> nodes);

private:
    Mode mode_ = Mode::classification_gini;
    std::size_t n_features_ = 0;
    int n_classes_ = 0;
    std::vector<TreeNode> nodes_;
    std::vector<double> raw_importances_;
};

}  // namespace darkbanner::trees
