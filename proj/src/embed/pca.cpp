#include "darkbanner/embed/pca.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace darkbanner::embed {

namespace {

double off_diagonal_norm2(const std::vector<double>& a, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) sum += a[i * n + j] * a[i * n + j];
    }
    return sum;
}

}  // namespace

void jacobi_eigen_symmetric(std::vector<double>& a, std::size_t n,
                            std::vector<double>& eigenvalues,
                            std::vector<double>& eigenvectors) {
    eigenvectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) eigenvectors[i * n + i] = 1.0;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i * n + i]);
    scale += std::sqrt(off_diagonal_norm2(a, n));
    const double stop = (scale > 0.0 ? scale : 1.0) * 1e-15;

    for (int sweep = 0; sweep < 64; ++sweep) {
        if (std::sqrt(off_diagonal_norm2(a, n)) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i != p && i != q) {
                        const double aip = a[i * n + p];
                        const double aiq = a[i * n + q];
                        a[i * n + p] = c * aip - s * aiq;
                        a[p * n + i] = a[i * n + p];
                        a[i * n + q] = s * aip + c * aiq;
                        a[q * n + i] = a[i * n + q];
                    }
                    const double vip = eigenvectors[i * n + p];
                    const double viq = eigenvectors[i * n + q];
                    eigenvectors[i * n + p] = c * vip - s * viq;
                    eigenvectors[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i * n + i];

    // Sort ascending, permuting eigenvector columns to match.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return eigenvalues[x] < eigenvalues[y]; });
    std::vector<double> sorted_values(n);
    std::vector<double> sorted_vectors(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_values[j] = eigenvalues[order[j]];
        for (std::size_t i = 0; i < n; ++i) {
            sorted_vectors[i * n + j] = eigenvectors[i * n + order[j]];
        }
    }
    eigenvalues = std::move(sorted_values);
    eigenvectors = std::move(sorted_vectors);
}

PcaModel fit_pca(const std::vector<Vector>& points, std::size_t m) {
    const std::size_t n = points.size();
    if (n < 2) throw TooFewPoints("pca requires at least 2 points");
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch(dim, p.size());
    }
    if (m > dim) throw InvalidHyperparameter("pca components exceed dimension");

    PcaModel model;
    model.mean.assign(dim, 0.0);
    for (const auto& p : points) {
        for (std::size_t d = 0; d < dim; ++d) model.mean[d] += p[d];
    }
    for (auto& v : model.mean) v /= static_cast<double>(n);

    std::vector<Vector> centered(n, Vector(dim));
    double total_variance = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            centered[i][d] = points[i][d] - model.mean[d];
            total_variance += centered[i][d] * centered[i][d];
        }
    }
    total_variance /= static_cast<double>(n - 1);

    if (total_variance <= 1e-24) {
        model.degenerate = true;
        model.components.assign(m, Vector(dim, 0.0));
        for (std::size_t j = 0; j < m; ++j) model.components[j][j] = 1.0;
        model.explained_variance.assign(m, 0.0);
        return model;
    }

    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;

    if (dim <= n) {
        // Covariance route: D x D.
        std::vector<double> cov(dim * dim, 0.0);
        core::parallel_for(dim, [&](std::size_t r) {
            for (std::size_t c = r; c < dim; ++c) {
                double sum = 0.0;
                for (std::size_t i = 0; i < n; ++i) sum += centered[i][r] * centered[i][c];
                cov[r * dim + c] = sum / static_cast<double>(n - 1);
                cov[c * dim + r] = cov[r * dim + c];
            }
        });
        jacobi_eigen_symmetric(cov, dim, eigenvalues, eigenvectors);
        model.components.assign(m, Vector(dim));
        model.explained_variance.assign(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t col = dim - 1 - j;  // descending
            model.explained_variance[j] = std::max(0.0, eigenvalues[col]);
            for (std::size_t d = 0; d < dim; ++d) {
                model.components[j][d] = eigenvectors[d * dim + col];
            }
        }
    } else {
        // Gram route: n x n shares the non-zero spectrum with the covariance.
        std::vector<double> gram(n * n, 0.0);
        core::parallel_for(n, [&](std::size_t r) {
            for (std::size_t c = r; c < n; ++c) {
                gram[r * n + c] = dot(centered[r], centered[c]);
                gram[c * n + r] = gram[r * n + c];
            }
        });
        jacobi_eigen_symmetric(gram, n, eigenvalues, eigenvectors);
        model.components.assign(m, Vector(dim, 0.0));
        model.explained_variance.assign(m, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            const std::size_t col = n - 1 - j;
            const double lambda = std::max(0.0, eigenvalues[col]);
            model.explained_variance[j] = lambda / static_cast<double>(n - 1);
            Vector& comp = model.components[j];
            for (std::size_t i = 0; i < n; ++i) {
                const double w = eigenvectors[i * n + col];
                for (std::size_t d = 0; d < dim; ++d) comp[d] += w * centered[i][d];
            }
            const double len = norm(comp);
            if (len > 0.0) {
                for (auto& v : comp) v /= len;
            } else {
                // Rank-deficient tail: fall back to a canonical basis vector.
                comp.assign(dim, 0.0);
                comp[j % dim] = 1.0;
            }
        }
    }

    // Sign convention: largest-magnitude entry positive (lowest index on ties).
    for (auto& comp : model.components) {
        std::size_t arg = 0;
        for (std::size_t d = 1; d < comp.size(); ++d) {
            if (std::abs(comp[d]) > std::abs(comp[arg])) arg = d;
        }
        if (comp[arg] < 0.0) {
            for (auto& v : comp) v = -v;
        }
    }
    return model;
}

Vector project(const PcaModel& model, const Vector& point) {
    if (point.size() != model.mean.size()) {
        throw DimensionMismatch(model.mean.size(), point.size());
    }
    Vector centered(point.size());
    for (std::size_t d = 0; d < point.size(); ++d) centered[d] = point[d] - model.mean[d];
    Vector out(model.components.size());
    for (std::size_t j = 0; j < model.components.size(); ++j) {
        out[j] = dot(model.components[j], centered);
    }
    return out;
}

std::pair<double, double> project_2d(const PcaModel& model, const Vector& point) {
    if (model.components.size() < 2) throw UnfittedModel();
    const Vector p = project(model, point);
    return {p[0], p[1]};
}

}  // namespace darkbanner::embed
