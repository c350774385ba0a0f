#include "darkbanner/pipeline/metrics.hpp"

#include "darkbanner/core/error.hpp"

#include <map>

namespace darkbanner::pipeline {

double weighted_accuracy(const std::vector<int>& actual, const std::vector<int>& predicted) {
    if (actual.empty()) throw EmptyInput();
    if (actual.size() != predicted.size()) throw ShapeMismatch("actual vs predicted lengths");

    std::map<int, std::size_t> class_total;
    std::map<int, std::size_t> class_correct;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        class_total[actual[i]] += 1;
        if (actual[i] == predicted[i]) class_correct[actual[i]] += 1;
    }
    const double n = static_cast<double>(actual.size());
    double score = 0.0;
    for (const auto& [label, total] : class_total) {
        const double recall =
            static_cast<double>(class_correct[label]) / static_cast<double>(total);
        score += (static_cast<double>(total) / n) * recall;
    }
    return score;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& actual,
                                 const std::vector<int>& predicted, int n_classes) {
    if (actual.size() != predicted.size()) throw ShapeMismatch("actual vs predicted lengths");
    if (n_classes != 3) throw InvalidHyperparameter("confusion matrix is fixed at 3 classes");

    std::array<std::array<std::size_t, 3>, 3> counts{};
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const int a = actual[i];
        const int p = predicted[i];
        if (a < 0 || a >= n_classes || p < 0 || p >= n_classes) {
            throw ShapeMismatch("label outside [0, n_classes)");
        }
        counts[static_cast<std::size_t>(a)][static_cast<std::size_t>(p)] += 1;
    }

    ConfusionMatrix out;
    for (std::size_t r = 0; r < 3; ++r) {
        std::size_t total = 0;
        for (const auto c : counts[r]) total += c;
        if (total == 0) {
            out.empty_row[r] = true;
            continue;
        }
        for (std::size_t c = 0; c < 3; ++c) {
            out.rows[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(total);
        }
    }
    return out;
}

}  // namespace darkbanner::pipeline
