#include "darkbanner/embed/kmeans.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/parallel.hpp"
#include "darkbanner/core/rng.hpp"

#include <limits>
#include <stdexcept>

namespace darkbanner::embed {

namespace {

std::size_t nearest_centroid(const std::vector<Vector>& centroids, const Vector& point,
                             double* out_dist2) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        const double d = squared_distance(centroids[c], point);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    if (out_dist2) *out_dist2 = best_d;
    return best;
}

std::vector<Vector> kmeanspp_seed(const std::vector<Vector>& points, std::size_t k,
                                  core::Rng& rng) {
    const std::size_t n = points.size();
    std::vector<Vector> centroids;
    centroids.reserve(k);
    centroids.push_back(points[rng.uniform_index(n)]);

    std::vector<double> dist2(n);
    for (std::size_t i = 0; i < n; ++i) dist2[i] = squared_distance(points[i], centroids[0]);

    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : dist2) total += d;
        std::size_t chosen = 0;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double cum = 0.0;
            chosen = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                cum += dist2[i];
                if (cum > r) {
                    chosen = i;
                    break;
                }
            }
        }
        // total == 0: every point coincides with a centroid already; the
        // lowest index keeps the run deterministic.
        centroids.push_back(points[chosen]);
        for (std::size_t i = 0; i < n; ++i) {
            const double d = squared_distance(points[i], centroids.back());
            if (d < dist2[i]) dist2[i] = d;
        }
    }
    return centroids;
}

KMeansModel lloyd_run(const std::vector<Vector>& points, const KMeansOptions& options,
                      int restart_index) {
    const std::size_t n = points.size();
    const std::size_t k = options.k;
    const std::size_t dim = points[0].size();

    core::Rng rng(core::derive_seed(options.seed, static_cast<std::uint64_t>(restart_index)));
    std::vector<Vector> centroids = kmeanspp_seed(points, k, rng);

    std::vector<std::size_t> assignment(n, 0);
    std::vector<double> cost(n, 0.0);
    double previous_inertia = std::numeric_limits<double>::infinity();
    int iterations = 0;

    for (int iter = 0; iter < options.max_iterations; ++iter) {
        iterations = iter + 1;

        // Assignment: each point writes its own slot; the inertia reduction
        // below runs serially in index order so results are schedule-free.
        core::parallel_for(n, [&](std::size_t i) {
            assignment[i] = nearest_centroid(centroids, points[i], &cost[i]);
        });
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) inertia += cost[i];

        if (inertia > previous_inertia + 1e-9 * std::max(1.0, previous_inertia)) {
            throw std::logic_error("k-means inertia increased across iterations");
        }
        previous_inertia = inertia;

        // Update step.
        std::vector<Vector> sums(k, Vector(dim, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t c = assignment[i];
            ++counts[c];
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += points[i][d];
        }

        // Reseed empty clusters with the farthest point (ties: lowest index).
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            std::size_t farthest = 0;
            double far_cost = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[assignment[i]] <= 1) continue;  // don't empty another cluster
                if (cost[i] > far_cost) {
                    far_cost = cost[i];
                    farthest = i;
                }
            }
            if (far_cost < 0.0) continue;  // fewer distinct points than k
            const std::size_t old = assignment[farthest];
            --counts[old];
            for (std::size_t d = 0; d < dim; ++d) sums[old][d] -= points[farthest][d];
            assignment[farthest] = c;
            counts[c] = 1;
            sums[c] = points[farthest];
            cost[farthest] = 0.0;
        }

        double max_shift2 = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            double shift2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double m = sums[c][d] / static_cast<double>(counts[c]);
                const double delta = m - centroids[c][d];
                shift2 += delta * delta;
                centroids[c][d] = m;
            }
            if (shift2 > max_shift2) max_shift2 = shift2;
        }
        if (max_shift2 < options.shift_tolerance * options.shift_tolerance) break;
    }

    // Final pass so assignments and inertia match the returned centroids.
    core::parallel_for(n, [&](std::size_t i) {
        assignment[i] = nearest_centroid(centroids, points[i], &cost[i]);
    });
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) inertia += cost[i];

    KMeansModel model;
    model.k = k;
    model.centroids = std::move(centroids);
    model.inertia = inertia;
    model.seed = options.seed;
    model.iterations_run = iterations;
    model.assignments = std::move(assignment);
    return model;
}

}  // namespace

KMeansModel fit_kmeans(const std::vector<Vector>& points, const KMeansOptions& options) {
    if (options.k < 1) throw InvalidHyperparameter("k must be >= 1");
    if (points.size() < options.k) {
        throw TooFewPoints(std::to_string(points.size()) + " points for k=" +
                           std::to_string(options.k));
    }
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) throw DimensionMismatch(dim, p.size());
    }

    const int restarts = std::max(1, options.restarts);
    std::vector<KMeansModel> runs(restarts);
    core::parallel_for(static_cast<std::size_t>(restarts), [&](std::size_t r) {
        runs[r] = lloyd_run(points, options, static_cast<int>(r));
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].inertia < runs[best].inertia) best = r;
    }
    return std::move(runs[best]);
}

std::size_t assign_cluster(const KMeansModel& model, const Vector& point) {
    if (model.centroids.empty()) throw UnfittedModel();
    if (point.size() != model.centroids[0].size()) {
        throw DimensionMismatch(model.centroids[0].size(), point.size());
    }
    return nearest_centroid(model.centroids, point, nullptr);
}

}  // namespace darkbanner::embed
