#include "darkbanner/trees/forest.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/parallel.hpp"

#include <cmath>

namespace darkbanner::trees {

namespace {

// First n draws of the tree's stream are the bootstrap; the remainder feeds
// split-level feature sampling. oob_accuracy re-derives the same draws.
std::vector<std::size_t> bootstrap_indices(std::size_t n, core::Rng& rng) {
    std::vector<std::size_t> indices(n);
    for (auto& i : indices) i = rng.uniform_index(n);
    return indices;
}

}  // namespace

RandomForest fit_random_forest(const Matrix& X, const std::vector<int>& y,
                               const ForestOptions& options) {
    if (X.empty()) throw EmptyData();
    if (X.size() != y.size()) throw ShapeMismatch("rows vs labels");
    if (options.n_trees < 1) throw InvalidHyperparameter("n_trees must be >= 1");

    int n_classes = 0;
    for (int label : y) n_classes = std::max(n_classes, label + 1);

    RandomForest forest;
    forest.options = options;
    forest.n_classes = n_classes;
    forest.n_samples_trained = X.size();
    const int d = static_cast<int>(X[0].size());
    forest.resolved_max_features =
        options.max_features == 0 ? std::max(1, static_cast<int>(std::sqrt(double(d))))
        : options.max_features < 0 ? 0
                                   : options.max_features;

    forest.trees.resize(static_cast<std::size_t>(options.n_trees));
    forest.tree_seeds.resize(static_cast<std::size_t>(options.n_trees));
    for (std::size_t t = 0; t < forest.tree_seeds.size(); ++t) {
        forest.tree_seeds[t] = core::derive_seed(options.seed, t);
    }

    core::parallel_for(forest.trees.size(), [&](std::size_t t) {
        core::Rng rng(forest.tree_seeds[t]);
        TreeParams params;
        params.max_depth = options.max_depth;
        params.min_samples_leaf = options.min_samples_leaf;
        params.max_features = forest.resolved_max_features;

        if (options.bootstrap) {
            const auto sample = bootstrap_indices(X.size(), rng);
            Matrix Xb(sample.size());
            std::vector<int> yb(sample.size());
            for (std::size_t i = 0; i < sample.size(); ++i) {
                Xb[i] = X[sample[i]];
                yb[i] = y[sample[i]];
            }
            forest.trees[t] =
                DecisionTree::fit_classification(Xb, yb, n_classes, params, &rng);
        } else {
            forest.trees[t] = DecisionTree::fit_classification(X, y, n_classes, params, &rng);
        }
    });
    return forest;
}

int predict_forest(const RandomForest& forest, const std::vector<double>& x) {
    if (forest.trees.empty()) throw UnfittedModel();
    std::vector<std::size_t> votes(static_cast<std::size_t>(forest.n_classes), 0);
    for (const auto& tree : forest.trees) {
        votes[static_cast<std::size_t>(tree.predict_class(x))] += 1;
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < votes.size(); ++c) {
        if (votes[c] > votes[best]) best = c;
    }
    return static_cast<int>(best);
}

std::vector<double> feature_importances(const RandomForest& forest) {
    if (forest.trees.empty()) throw UnfittedModel();
    const std::size_t d = forest.trees[0].n_features();
    std::vector<double> total(d, 0.0);
    for (const auto& tree : forest.trees) {
        const auto& raw = tree.raw_importances();
        for (std::size_t f = 0; f < d; ++f) total[f] += raw[f];
    }
    double sum = 0.0;
    for (auto& v : total) {
        v /= static_cast<double>(forest.trees.size());
        sum += v;
    }
    if (sum <= 0.0) return std::vector<double>(d, 0.0);
    for (auto& v : total) v /= sum;
    return total;
}

double oob_accuracy(const RandomForest& forest, const Matrix& X, const std::vector<int>& y) {
    if (forest.trees.empty()) throw UnfittedModel();
    if (!forest.options.bootstrap) throw InvalidHyperparameter("oob needs bootstrap resampling");
    if (X.size() != forest.n_samples_trained) {
        throw ShapeMismatch("oob data must be the training data");
    }

    const std::size_t n = X.size();
    std::vector<std::vector<std::size_t>> votes(
        n, std::vector<std::size_t>(static_cast<std::size_t>(forest.n_classes), 0));
    std::vector<char> in_bag(n);
    for (std::size_t t = 0; t < forest.trees.size(); ++t) {
        core::Rng rng(forest.tree_seeds[t]);
        std::fill(in_bag.begin(), in_bag.end(), 0);
        for (const auto i : bootstrap_indices(n, rng)) in_bag[i] = 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (!in_bag[i]) {
                votes[i][static_cast<std::size_t>(forest.trees[t].predict_class(X[i]))] += 1;
            }
        }
    }

    std::size_t counted = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t total = 0;
        std::size_t best = 0;
        for (std::size_t c = 0; c < votes[i].size(); ++c) {
            total += votes[i][c];
            if (votes[i][c] > votes[i][best]) best = c;
        }
        if (total == 0) continue;
        ++counted;
        if (static_cast<int>(best) == y[i]) ++correct;
    }
    return counted == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(counted);
}

}  // namespace darkbanner::trees
