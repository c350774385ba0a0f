#pragma once

#include <array>
#include <vector>

namespace darkbanner::pipeline {

// Per-class recall weighted by class frequency; algebraically equal to the
// plain fraction correct. Classes absent from `actual` contribute nothing.
double weighted_accuracy(const std::vector<int>& actual, const std::vector<int>& predicted);

struct ConfusionMatrix {
    std::array<std::array<double, 3>, 3> rows{};  // row-normalized
    std::array<bool, 3> empty_row{};              // flagged all-zero rows
};

// cell (i,j) = count(actual=i and predicted=j) / count(actual=i).
ConfusionMatrix confusion_matrix(const std::vector<int>& actual,
                                 const std::vector<int>& predicted, int n_classes = 3);

}  // namespace darkbanner::pipeline
