#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. These deliberately recompute everything the slow, direct way and
// share no code with the library paths they check.

#include "darkbanner/embed/embedding.hpp"
#include "darkbanner/trees/gbt.hpp"
#include "darkbanner/trees/tree.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Exhaustive-split CART: every (feature, midpoint) candidate is evaluated by
// materializing the partition and recomputing impurities from scratch.
// ---------------------------------------------------------------------------

inline double gini_of(const std::vector<int>& ys, int n_classes) {
    if (ys.empty()) return 0.0;
    std::vector<double> counts(static_cast<std::size_t>(n_classes), 0.0);
    for (int y : ys) counts[static_cast<std::size_t>(y)] += 1.0;
    double sum_sq = 0.0;
    for (double c : counts) sum_sq += c * c;
    const double n = static_cast<double>(ys.size());
    return 1.0 - sum_sq / (n * n);
}

struct BruteNode {
    int feature = -1;
    double threshold = 0.0;
    std::unique_ptr<BruteNode> left;
    std::unique_ptr<BruteNode> right;
    int label = 0;
};

class BruteTree {
public:
    BruteTree(const darkbanner::trees::Matrix& X, const std::vector<int>& y, int n_classes,
              int max_depth, int min_samples_leaf)
        : X_(X), y_(y), n_classes_(n_classes), max_depth_(max_depth),
          min_samples_leaf_(min_samples_leaf) {
        std::vector<std::size_t> all(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) all[i] = i;
        root_ = build(all, 0);
    }

    int predict(const std::vector<double>& x) const {
        const BruteNode* node = root_.get();
        while (node->feature >= 0) {
            node = x[static_cast<std::size_t>(node->feature)] <= node->threshold
                       ? node->left.get()
                       : node->right.get();
        }
        return node->label;
    }

private:
    std::unique_ptr<BruteNode> build(const std::vector<std::size_t>& idx, int depth) {
        std::vector<int> ys;
        for (auto i : idx) ys.push_back(y_[i]);
        const double impurity = gini_of(ys, n_classes_);

        auto leaf = [&]() {
            auto node = std::make_unique<BruteNode>();
            std::vector<int> counts(static_cast<std::size_t>(n_classes_), 0);
            for (int y : ys) counts[static_cast<std::size_t>(y)] += 1;
            int best = 0;
            for (int c = 1; c < n_classes_; ++c) {
                if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) {
                    best = c;
                }
            }
            node->label = best;
            return node;
        };

        if ((max_depth_ >= 0 && depth >= max_depth_) || impurity <= 0.0 ||
            idx.size() < 2 * static_cast<std::size_t>(min_samples_leaf_)) {
            return leaf();
        }

        const std::size_t d = X_[0].size();
        bool found = false;
        int best_f = -1;
        double best_t = 0.0;
        double best_decrease = 0.0;
        for (std::size_t f = 0; f < d; ++f) {
            std::vector<double> values;
            for (auto i : idx) values.push_back(X_[i][f]);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (std::size_t v = 1; v < values.size(); ++v) {
                const double threshold = (values[v - 1] + values[v]) / 2.0;
                std::vector<int> ly;
                std::vector<int> ry;
                for (auto i : idx) {
                    (X_[i][f] <= threshold ? ly : ry).push_back(y_[i]);
                }
                if (ly.size() < static_cast<std::size_t>(min_samples_leaf_) ||
                    ry.size() < static_cast<std::size_t>(min_samples_leaf_)) {
                    continue;
                }
                const double n = static_cast<double>(idx.size());
                const double decrease =
                    impurity -
                    (static_cast<double>(ly.size()) / n) * gini_of(ly, n_classes_) -
                    (static_cast<double>(ry.size()) / n) * gini_of(ry, n_classes_);
                if (decrease <= 0.0) continue;
                if (!found || decrease > best_decrease) {
                    found = true;
                    best_f = static_cast<int>(f);
                    best_t = threshold;
                    best_decrease = decrease;
                }
            }
        }
        if (!found) return leaf();

        auto node = std::make_unique<BruteNode>();
        node->feature = best_f;
        node->threshold = best_t;
        std::vector<std::size_t> li;
        std::vector<std::size_t> ri;
        for (auto i : idx) {
            (X_[i][static_cast<std::size_t>(best_f)] <= best_t ? li : ri).push_back(i);
        }
        node->left = build(li, depth + 1);
        node->right = build(ri, depth + 1);
        return node;
    }

    const darkbanner::trees::Matrix& X_;
    const std::vector<int>& y_;
    int n_classes_;
    int max_depth_;
    int min_samples_leaf_;
    std::unique_ptr<BruteNode> root_;
};

// ---------------------------------------------------------------------------
// Brute-force optimal 2-means: enumerate every non-trivial bipartition.
// ---------------------------------------------------------------------------

inline double optimal_two_means_inertia(const std::vector<darkbanner::embed::Vector>& points) {
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        darkbanner::embed::Vector mean_a(dim, 0.0);
        darkbanner::embed::Vector mean_b(dim, 0.0);
        std::size_t na = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                ++na;
                for (std::size_t d = 0; d < dim; ++d) mean_a[d] += points[i][d];
            } else {
                for (std::size_t d = 0; d < dim; ++d) mean_b[d] += points[i][d];
            }
        }
        const std::size_t nb = n - na;
        for (std::size_t d = 0; d < dim; ++d) {
            mean_a[d] /= static_cast<double>(na);
            mean_b[d] /= static_cast<double>(nb);
        }
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& m = (mask & (1u << i)) ? mean_a : mean_b;
            inertia += darkbanner::embed::squared_distance(points[i], m);
        }
        best = std::min(best, inertia);
    }
    return best;
}

// ---------------------------------------------------------------------------
// Dense eigen-decomposition PCA via Eigen.
// ---------------------------------------------------------------------------

struct EigenPca {
    std::vector<darkbanner::embed::Vector> components;  // variance-descending
    std::vector<double> variances;
};

inline EigenPca eigen_pca(const std::vector<darkbanner::embed::Vector>& points, std::size_t m) {
    const std::size_t n = points.size();
    const std::size_t dim = points[0].size();
    Eigen::MatrixXd data(n, dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) data(static_cast<int>(i), static_cast<int>(d)) = points[i][d];
    }
    const Eigen::RowVectorXd mean = data.colwise().mean();
    const Eigen::MatrixXd centered = data.rowwise() - mean;
    const Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(n - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);

    EigenPca out;
    for (std::size_t j = 0; j < m; ++j) {
        const auto col = solver.eigenvectors().col(static_cast<int>(dim - 1 - j));
        darkbanner::embed::Vector comp(dim);
        for (std::size_t d = 0; d < dim; ++d) comp[d] = col(static_cast<int>(d));
        out.components.push_back(std::move(comp));
        out.variances.push_back(solver.eigenvalues()(static_cast<int>(dim - 1 - j)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Straight-line GBT scorer: explicit node walking and its own softmax.
// ---------------------------------------------------------------------------

inline std::vector<double> gbt_distribution(const darkbanner::trees::GbtModel& model,
                                            const std::vector<double>& x) {
    std::vector<double> scores = model.initial_scores;
    for (const auto& stage : model.stages) {
        for (std::size_t c = 0; c < stage.size(); ++c) {
            const auto& nodes = stage[c].nodes();
            std::size_t at = 0;
            while (nodes[at].feature >= 0) {
                at = static_cast<std::size_t>(
                    x[static_cast<std::size_t>(nodes[at].feature)] <= nodes[at].threshold
                        ? nodes[at].left
                        : nodes[at].right);
            }
            scores[c] += model.learning_rate * nodes[at].value;
        }
    }
    double max_score = scores[0];
    for (double s : scores) max_score = std::max(max_score, s);
    double total = 0.0;
    std::vector<double> out(scores.size());
    for (std::size_t c = 0; c < scores.size(); ++c) {
        out[c] = std::exp(scores[c] - max_score);
        total += out[c];
    }
    for (auto& v : out) v /= total;
    return out;
}

}  // namespace oracle
