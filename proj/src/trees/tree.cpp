#include "darkbanner/trees/tree.hpp"

#include "darkbanner/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>

namespace darkbanner::trees {

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double decrease = 0.0;
};

double gini_from_counts(const std::vector<double>& counts, double total) {
    if (total <= 0.0) return 0.0;
    double sum_sq = 0.0;
    for (double c : counts) sum_sq += c * c;
    return 1.0 - sum_sq / (total * total);
}

// Builder shared by both modes: classification carries class counts,
// regression carries sums and squared sums.
class TreeBuilder {
public:
    TreeBuilder(const Matrix& X, const std::vector<int>* y_class,
                const std::vector<double>* y_reg, int n_classes, const TreeParams& params,
                core::Rng* rng, const FeatureOrder* presorted)
        : X_(X), y_class_(y_class), y_reg_(y_reg), n_classes_(n_classes), params_(params),
          rng_(rng), presorted_(presorted) {
        n_features_ = X.empty() ? 0 : X[0].size();
        raw_importances_.assign(n_features_, 0.0);
        // Column-major copy: split scans walk one feature across many rows.
        columns_.resize(n_features_ * X.size());
        for (std::size_t i = 0; i < X.size(); ++i) {
            for (std::size_t f = 0; f < n_features_; ++f) {
                columns_[f * X.size() + i] = X[i][f];
            }
        }
        if (!presorted_) {
            own_order_ = std::make_unique<FeatureOrder>(X);
            presorted_ = own_order_.get();
        }
        in_node_.assign(X.size(), 0);
    }

    std::vector<TreeNode> build() {
        std::vector<std::size_t> indices(X_.size());
        std::iota(indices.begin(), indices.end(), 0);
        build_node(std::move(indices), 0);
        return std::move(nodes_);
    }

    std::vector<double> take_importances() { return std::move(raw_importances_); }

private:
    double node_impurity(const std::vector<std::size_t>& indices) const {
        if (y_class_) {
            std::vector<double> counts(static_cast<std::size_t>(n_classes_), 0.0);
            for (auto i : indices) counts[static_cast<std::size_t>((*y_class_)[i])] += 1.0;
            return gini_from_counts(counts, static_cast<double>(indices.size()));
        }
        double sum = 0.0;
        double sum2 = 0.0;
        for (auto i : indices) {
            const double v = (*y_reg_)[i];
            sum += v;
            sum2 += v * v;
        }
        const double n = static_cast<double>(indices.size());
        return std::max(0.0, sum2 / n - (sum / n) * (sum / n));
    }

    std::vector<int> candidate_features() const {
        std::vector<int> features(n_features_);
        std::iota(features.begin(), features.end(), 0);
        if (params_.max_features <= 0 || !rng_ ||
            params_.max_features >= static_cast<int>(n_features_)) {
            return features;
        }
        // Partial Fisher-Yates, then ascending so tie-breaks stay by index.
        for (int i = 0; i < params_.max_features; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) + rng_->uniform_index(n_features_ - i);
            std::swap(features[static_cast<std::size_t>(i)], features[j]);
        }
        features.resize(static_cast<std::size_t>(params_.max_features));
        std::sort(features.begin(), features.end());
        return features;
    }

    SplitChoice best_split(const std::vector<std::size_t>& indices, double parent_impurity) {
        SplitChoice best;
        const double n = static_cast<double>(indices.size());
        const auto features = candidate_features();

        // Large nodes filter the presorted order (O(n_total) per feature);
        // small deep nodes sort directly. Both give (value, row) order.
        const bool filter_presorted = indices.size() * 4 >= X_.size();
        if (filter_presorted) {
            for (const auto i : indices) in_node_[i] = 1;
        }
        std::vector<std::pair<double, std::size_t>> sorted(indices.size());
        for (int f : features) {
            const double* column = columns_.data() + static_cast<std::size_t>(f) * X_.size();
            if (filter_presorted) {
                std::size_t count = 0;
                for (const auto row : presorted_->order(static_cast<std::size_t>(f))) {
                    if (in_node_[row]) sorted[count++] = {column[row], row};
                }
            } else {
                for (std::size_t i = 0; i < indices.size(); ++i) {
                    sorted[i] = {column[indices[i]], indices[i]};
                }
                std::sort(sorted.begin(), sorted.end());
            }

            if (y_class_) {
                std::vector<double> left_counts(static_cast<std::size_t>(n_classes_), 0.0);
                std::vector<double> total_counts(static_cast<std::size_t>(n_classes_), 0.0);
                std::vector<double> right_counts(static_cast<std::size_t>(n_classes_), 0.0);
                for (const auto& [v, i] : sorted) {
                    total_counts[static_cast<std::size_t>((*y_class_)[i])] += 1.0;
                }
                for (std::size_t pos = 1; pos < sorted.size(); ++pos) {
                    left_counts[static_cast<std::size_t>((*y_class_)[sorted[pos - 1].second])] +=
                        1.0;
                    if (sorted[pos].first <= sorted[pos - 1].first) continue;
                    const double n_left = static_cast<double>(pos);
                    const double n_right = n - n_left;
                    if (n_left < params_.min_samples_leaf || n_right < params_.min_samples_leaf) {
                        continue;
                    }
                    for (std::size_t c = 0; c < right_counts.size(); ++c) {
                        right_counts[c] = total_counts[c] - left_counts[c];
                    }
                    const double decrease =
                        parent_impurity - (n_left / n) * gini_from_counts(left_counts, n_left) -
                        (n_right / n) * gini_from_counts(right_counts, n_right);
                    consider(best, f, (sorted[pos - 1].first + sorted[pos].first) / 2.0, decrease);
                }
            } else {
                double total_sum = 0.0;
                double total_sum2 = 0.0;
                for (const auto& [v, i] : sorted) {
                    const double t = (*y_reg_)[i];
                    total_sum += t;
                    total_sum2 += t * t;
                }
                double left_sum = 0.0;
                double left_sum2 = 0.0;
                for (std::size_t pos = 1; pos < sorted.size(); ++pos) {
                    const double t = (*y_reg_)[sorted[pos - 1].second];
                    left_sum += t;
                    left_sum2 += t * t;
                    if (sorted[pos].first <= sorted[pos - 1].first) continue;
                    const double n_left = static_cast<double>(pos);
                    const double n_right = n - n_left;
                    if (n_left < params_.min_samples_leaf || n_right < params_.min_samples_leaf) {
                        continue;
                    }
                    const double mse_left =
                        std::max(0.0, left_sum2 / n_left - (left_sum / n_left) * (left_sum / n_left));
                    const double right_sum = total_sum - left_sum;
                    const double right_sum2 = total_sum2 - left_sum2;
                    const double mse_right = std::max(
                        0.0, right_sum2 / n_right - (right_sum / n_right) * (right_sum / n_right));
                    const double decrease = parent_impurity - (n_left / n) * mse_left -
                                            (n_right / n) * mse_right;
                    consider(best, f, (sorted[pos - 1].first + sorted[pos].first) / 2.0, decrease);
                }
            }
        }
        if (filter_presorted) {
            for (const auto i : indices) in_node_[i] = 0;
        }
        return best;
    }

    static void consider(SplitChoice& best, int feature, double threshold, double decrease) {
        if (decrease <= 0.0) return;
        // Features ascend and thresholds ascend within a feature, so a strict
        // improvement test realizes the lowest-index/lowest-threshold tie rule.
        if (!best.found || decrease > best.decrease) {
            best = SplitChoice{true, feature, threshold, decrease};
        }
    }

    int make_leaf(const std::vector<std::size_t>& indices) {
        TreeNode node;
        node.n_samples = indices.size();
        if (y_class_) {
            node.distribution.assign(static_cast<std::size_t>(n_classes_), 0.0);
            for (auto i : indices) {
                node.distribution[static_cast<std::size_t>((*y_class_)[i])] += 1.0;
            }
            for (auto& v : node.distribution) v /= static_cast<double>(indices.size());
        } else {
            double sum = 0.0;
            for (auto i : indices) sum += (*y_reg_)[i];
            node.value = sum / static_cast<double>(indices.size());
        }
        nodes_.push_back(std::move(node));
        return static_cast<int>(nodes_.size() - 1);
    }

    int build_node(std::vector<std::size_t> indices, int depth) {
        const double impurity = node_impurity(indices);
        const bool depth_capped = params_.max_depth >= 0 && depth >= params_.max_depth;
        if (depth_capped || impurity <= 0.0 ||
            indices.size() < 2 * static_cast<std::size_t>(params_.min_samples_leaf)) {
            return make_leaf(indices);
        }
        const SplitChoice split = best_split(indices, impurity);
        if (!split.found) return make_leaf(indices);

        raw_importances_[static_cast<std::size_t>(split.feature)] +=
            (static_cast<double>(indices.size()) / static_cast<double>(X_.size())) *
            split.decrease;

        std::vector<std::size_t> left_idx;
        std::vector<std::size_t> right_idx;
        const double* column =
            columns_.data() + static_cast<std::size_t>(split.feature) * X_.size();
        for (auto i : indices) {
            if (column[i] <= split.threshold) {
                left_idx.push_back(i);
            } else {
                right_idx.push_back(i);
            }
        }
        indices.clear();
        indices.shrink_to_fit();

        TreeNode node;
        node.feature = split.feature;
        node.threshold = split.threshold;
        node.n_samples = left_idx.size() + right_idx.size();
        nodes_.push_back(std::move(node));
        const int self = static_cast<int>(nodes_.size() - 1);
        const int left = build_node(std::move(left_idx), depth + 1);
        const int right = build_node(std::move(right_idx), depth + 1);
        nodes_[static_cast<std::size_t>(self)].left = left;
        nodes_[static_cast<std::size_t>(self)].right = right;
        return self;
    }

    const Matrix& X_;
    const std::vector<int>* y_class_;
    const std::vector<double>* y_reg_;
    int n_classes_;
    TreeParams params_;
    core::Rng* rng_;
    const FeatureOrder* presorted_ = nullptr;
    std::unique_ptr<FeatureOrder> own_order_;
    std::size_t n_features_ = 0;
    std::vector<double> columns_;  // column-major copy of X
    std::vector<char> in_node_;
    std::vector<TreeNode> nodes_;
    std::vector<double> raw_importances_;
};

void check_shapes(const Matrix& X, std::size_t y_size) {
    if (X.empty()) throw EmptyData();
    if (X.size() != y_size) {
        throw ShapeMismatch("rows " + std::to_string(X.size()) + " vs targets " +
                            std::to_string(y_size));
    }
    const std::size_t width = X[0].size();
    for (const auto& row : X) {
        if (row.size() != width) throw ShapeMismatch("ragged feature matrix");
    }
}

}  // namespace

FeatureOrder::FeatureOrder(const Matrix& X) {
    n_rows_ = X.size();
    const std::size_t d = X.empty() ? 0 : X[0].size();
    order_.resize(d);
    for (std::size_t f = 0; f < d; ++f) {
        auto& order = order_[f];
        order.resize(n_rows_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return X[a][f] < X[b][f] || (X[a][f] == X[b][f] && a < b);
        });
    }
}

DecisionTree DecisionTree::fit_classification(const Matrix& X, const std::vector<int>& y,
                                              int n_classes, const TreeParams& params,
                                              core::Rng* rng, const FeatureOrder* presorted) {
    check_shapes(X, y.size());
    for (int label : y) {
        if (label < 0 || label >= n_classes) {
            throw ShapeMismatch("label " + std::to_string(label) + " outside [0, n_classes)");
        }
    }
    DecisionTree tree;
    tree.mode_ = Mode::classification_gini;
    tree.n_features_ = X[0].size();
    tree.n_classes_ = n_classes;
    TreeBuilder builder(X, &y, nullptr, n_classes, params, rng, presorted);
    tree.nodes_ = builder.build();
    tree.raw_importances_ = builder.take_importances();
    return tree;
}

DecisionTree DecisionTree::fit_regression(const Matrix& X, const std::vector<double>& y,
                                          const TreeParams& params, core::Rng* rng,
                                          const FeatureOrder* presorted) {
    check_shapes(X, y.size());
    DecisionTree tree;
    tree.mode_ = Mode::regression_mse;
    tree.n_features_ = X[0].size();
    TreeBuilder builder(X, nullptr, &y, 0, params, rng, presorted);
    tree.nodes_ = builder.build();
    tree.raw_importances_ = builder.take_importances();
    return tree;
}

std::size_t DecisionTree::leaf_index(const std::vector<double>& x) const {
    if (x.size() != n_features_) throw DimensionMismatch(n_features_, x.size());
    std::size_t node = 0;
    while (nodes_[node].feature >= 0) {
        const auto& n = nodes_[node];
        node = static_cast<std::size_t>(
            x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return node;
}

const std::vector<double>& DecisionTree::predict_distribution(const std::vector<double>& x) const {
    return nodes_[leaf_index(x)].distribution;
}

int DecisionTree::predict_class(const std::vector<double>& x) const {
    const auto& dist = predict_distribution(x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < dist.size(); ++c) {
        if (dist[c] > dist[best]) best = c;
    }
    return static_cast<int>(best);
}

double DecisionTree::predict_value(const std::vector<double>& x) const {
    return nodes_[leaf_index(x)].value;
}

DecisionTree DecisionTree::from_parts(Mode mode, std::size_t n_features, int n_classes,
                                      std::vector<TreeNode> nodes) {
    DecisionTree tree;
    tree.mode_ = mode;
    tree.n_features_ = n_features;
    tree.n_classes_ = n_classes;
    tree.nodes_ = std::move(nodes);
    tree.raw_importances_.assign(n_features, 0.0);
    return tree;
}

}  // namespace darkbanner::trees
