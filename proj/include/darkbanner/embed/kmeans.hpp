#pragma once

#include "darkbanner/embed/embedding.hpp"

#include <cstdint>
#include <vector>

namespace darkbanner::embed {

struct KMeansOptions {
    std::size_t k = 6;
    std::uint64_t seed = 42;
    int restarts = 10;
    int max_iterations = 300;
    double shift_tolerance = 1e-4;  // converged when no centroid moves further
};

struct KMeansModel {
    std::size_t k = 0;
    std::vector<Vector> centroids;
    double inertia = 0.0;
    std::uint64_t seed = 0;
    int iterations_run = 0;
    std::vector<std::size_t> assignments;  // per training point
};

// Lloyd's algorithm with k-means++ seeding. Restarts run as independent
// units, each on its own PRNG stream derived from (seed, restart index);
// the returned model is the restart with the lowest inertia (ties break to
// the lowest restart index), so the result does not depend on scheduling.
// A cluster that empties during an update is reseeded with the point
// farthest from its assigned centroid, which keeps all k clusters non-empty
// whenever the input has at least k distinct points.
KMeansModel fit_kmeans(const std::vector<Vector>& points, const KMeansOptions& options);

// Nearest centroid by squared distance; ties go to the lowest index.
std::size_t assign_cluster(const KMeansModel& model, const Vector& point);

}  // namespace darkbanner::embed
