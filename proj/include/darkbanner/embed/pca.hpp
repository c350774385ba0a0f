#pragma once

#include "darkbanner/embed/embedding.hpp"

#include <cstddef>
#include <vector>

namespace darkbanner::embed {

struct PcaModel {
    Vector mean;
    std::vector<Vector> components;  // orthonormal rows, variance-descending
    Vector explained_variance;       // non-increasing, >= 0
    bool degenerate = false;         // all points identical; components are canonical basis
};

// Centers the data and takes the top-m eigenvectors of the sample covariance.
// When n <= D the DxD eigenproblem is replaced by the nxn Gram factorization,
// which has the same non-zero spectrum. Sign convention: the entry of largest
// magnitude in each component is positive (lowest index on ties).
PcaModel fit_pca(const std::vector<Vector>& points, std::size_t m);

// Coordinates of the centered point along the components.
Vector project(const PcaModel& model, const Vector& point);

// First two coordinates; the model must hold at least two components.
std::pair<double, double> project_2d(const PcaModel& model, const Vector& point);

// Dense symmetric eigensolver (cyclic Jacobi). Exposed for reuse; returns
// eigenvalues ascending with matching eigenvector columns.
void jacobi_eigen_symmetric(std::vector<double>& matrix, std::size_t n,
                            std::vector<double>& eigenvalues,
                            std::vector<double>& eigenvectors);

}  // namespace darkbanner::embed
