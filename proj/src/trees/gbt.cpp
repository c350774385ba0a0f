#include "darkbanner/trees/gbt.hpp"

#include "darkbanner/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace darkbanner::trees {

std::vector<double> softmax(const std::vector<double>& scores) {
    double max_score = scores[0];
    for (double s : scores) max_score = std::max(max_score, s);
    std::vector<double> out(scores.size());
    double total = 0.0;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        out[c] = std::exp(scores[c] - max_score);
        total += out[c];
    }
    for (auto& v : out) v /= total;
    return out;
}

GbtModel fit_gbt(const Matrix& X, const std::vector<int>& y, const GbtOptions& options) {
    if (X.empty()) throw EmptyData();
    if (X.size() != y.size()) throw ShapeMismatch("rows vs labels");
    if (options.learning_rate <= 0.0) throw InvalidHyperparameter("learning_rate must be > 0");
    if (options.n_estimators < 0) throw InvalidHyperparameter("n_estimators must be >= 0");

    const std::size_t n = X.size();

    std::map<int, std::size_t> counts;
    for (int label : y) counts[label] += 1;

    GbtModel model;
    model.learning_rate = options.learning_rate;
    model.n_estimators = options.n_estimators;
    model.max_depth = options.max_depth;
    model.min_samples_leaf = options.min_samples_leaf;
    model.n_features = X[0].size();
    for (const auto& [label, count] : counts) {
        model.classes.push_back(label);
        model.priors.push_back(static_cast<double>(count) / static_cast<double>(n));
    }

    const std::size_t K = model.classes.size();
    if (K < 2) {
        model.degenerate = true;
        model.initial_scores.assign(K, 0.0);
        model.train_deviance.assign(1, 0.0);
        return model;
    }

    model.initial_scores.resize(K);
    for (std::size_t c = 0; c < K; ++c) model.initial_scores[c] = std::log(model.priors[c]);

    std::map<int, std::size_t> class_index;
    for (std::size_t c = 0; c < K; ++c) class_index[model.classes[c]] = c;

    std::vector<std::vector<double>> scores(n, model.initial_scores);
    std::vector<std::vector<double>> probs(n);

    auto refresh_probs_and_deviance = [&]() {
        double deviance = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            probs[i] = softmax(scores[i]);
            const double p = std::max(probs[i][class_index.at(y[i])], 1e-300);
            deviance -= std::log(p);
        }
        return deviance / static_cast<double>(n);
    };

    model.train_deviance.push_back(refresh_probs_and_deviance());

    TreeParams params;
    params.max_depth = options.max_depth;
    params.min_samples_leaf = options.min_samples_leaf;

    // Feature values never change across stages; sort them once.
    const FeatureOrder presorted(X);

    std::vector<double> residuals(n);
    for (int stage = 0; stage < options.n_estimators; ++stage) {
        std::vector<DecisionTree> stage_trees;
        stage_trees.reserve(K);
        for (std::size_t c = 0; c < K; ++c) {
            for (std::size_t i = 0; i < n; ++i) {
                const double target = class_index.at(y[i]) == c ? 1.0 : 0.0;
                residuals[i] = target - probs[i][c];
            }
            DecisionTree tree =
                DecisionTree::fit_regression(X, residuals, params, nullptr, &presorted);

            // Per-leaf Newton step: ((K-1)/K) * sum(residual) / sum(p(1-p)).
            std::vector<double> leaf_num(tree.nodes().size(), 0.0);
            std::vector<double> leaf_den(tree.nodes().size(), 0.0);
            std::vector<std::size_t> leaf_of(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t leaf = tree.leaf_index(X[i]);
                leaf_of[i] = leaf;
                leaf_num[leaf] += residuals[i];
                leaf_den[leaf] += probs[i][c] * (1.0 - probs[i][c]);
            }
            auto& nodes = tree.mutable_nodes();
            const double k_factor =
                (static_cast<double>(K) - 1.0) / static_cast<double>(K);
            for (std::size_t nidx = 0; nidx < nodes.size(); ++nidx) {
                if (nodes[nidx].feature >= 0) continue;
                nodes[nidx].value =
                    k_factor * leaf_num[nidx] / std::max(leaf_den[nidx], 1e-12);
            }
            for (std::size_t i = 0; i < n; ++i) {
                scores[i][c] += options.learning_rate * nodes[leaf_of[i]].value;
            }
            stage_trees.push_back(std::move(tree));
        }
        model.stages.push_back(std::move(stage_trees));
        model.train_deviance.push_back(refresh_probs_and_deviance());
    }
    return model;
}

GbtPrediction predict_gbt(const GbtModel& model, const std::vector<double>& x) {
    if (model.degenerate) {
        GbtPrediction p;
        p.distribution.assign(model.classes.size(), 1.0);
        p.label = model.classes.empty() ? 0 : model.classes[0];
        return p;
    }
    if (x.size() != model.n_features) throw DimensionMismatch(model.n_features, x.size());

    std::vector<double> scores = model.initial_scores;
    for (const auto& stage : model.stages) {
        for (std::size_t c = 0; c < stage.size(); ++c) {
            scores[c] += model.learning_rate * stage[c].predict_value(x);
        }
    }
    GbtPrediction p;
    p.distribution = softmax(scores);
    std::size_t best = 0;
    for (std::size_t c = 1; c < p.distribution.size(); ++c) {
        if (p.distribution[c] > p.distribution[best]) best = c;
    }
    p.label = model.classes[best];
    return p;
}

}  // namespace darkbanner::trees
