// Times the parallel kernels at 1 thread and at the full thread count, and
// checks that both settings produce identical results (the kernels are
// written to be bit-identical at any parallelism degree).

#include "darkbanner/core/parallel.hpp"
#include "darkbanner/core/rng.hpp"
#include "darkbanner/embed/kmeans.hpp"
#include "darkbanner/trees/forest.hpp"
#include "darkbanner/trees/grid_search.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

namespace {

using Clock = std::chrono::steady_clock;

double seconds_of(const std::function<void()>& fn) {
    const auto start = Clock::now();
    fn();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct BenchCase {
    std::string name;
    std::function<std::string()> run;  // returns a digest for the identity check
};

std::string digest_doubles(const std::vector<double>& values) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const double v : values) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) h = (h ^ ((bits >> (8 * i)) & 0xFF)) * 0x100000001B3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

int main() {
    darkbanner::core::Rng rng(7);

    // Synthetic blobs for k-means.
    const std::size_t n_points = 2000;
    const std::size_t dim = 64;
    std::vector<darkbanner::embed::Vector> points(n_points, darkbanner::embed::Vector(dim));
    for (std::size_t i = 0; i < n_points; ++i) {
        const double center = static_cast<double>(i % 8) * 5.0;
        for (auto& v : points[i]) v = center + rng.uniform(-1.0, 1.0);
    }

    // Synthetic classification table for the tree kernels.
    const std::size_t n_rows = 1200;
    const std::size_t n_cols = 16;
    darkbanner::trees::Matrix X(n_rows, std::vector<double>(n_cols));
    std::vector<int> y(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) {
        for (auto& v : X[i]) v = rng.uniform(-2.0, 2.0);
        const double s = X[i][0] + 0.5 * X[i][1] + rng.uniform(-0.5, 0.5);
        y[i] = s < -0.6 ? 0 : s < 0.6 ? 1 : 2;
    }

    std::vector<BenchCase> cases;
    cases.push_back({"kmeans k=8 x10 restarts", [&] {
                         darkbanner::embed::KMeansOptions options;
                         options.k = 8;
                         options.seed = 3;
                         const auto model = darkbanner::embed::fit_kmeans(points, options);
                         std::vector<double> flat{model.inertia};
                         for (const auto& c : model.centroids) {
                             flat.insert(flat.end(), c.begin(), c.end());
                         }
                         return digest_doubles(flat);
                     }});
    cases.push_back({"random forest 64 trees", [&] {
                         darkbanner::trees::ForestOptions options;
                         options.n_trees = 64;
                         options.seed = 5;
                         const auto forest = darkbanner::trees::fit_random_forest(X, y, options);
                         return digest_doubles(darkbanner::trees::feature_importances(forest));
                     }});
    cases.push_back({"grid search 3x3 cells", [&] {
                         darkbanner::trees::HyperGrid grid;
                         grid.learning_rates = {0.1, 0.05, 0.01};
                         grid.n_estimators_options = {5, 10, 15};
                         const auto result = darkbanner::trees::grid_search(X, y, grid, 11);
                         std::vector<double> flat{result.best_accuracy,
                                                  result.best_learning_rate,
                                                  double(result.best_n_estimators)};
                         for (const auto& cell : result.cells) flat.push_back(cell.mean_accuracy);
                         return digest_doubles(flat);
                     }});

    const int full = darkbanner::core::max_threads();
    std::printf("threads available: %d\n\n", full);
    std::printf("%-28s %12s %12s %9s  %s\n", "kernel", "serial (s)", "parallel (s)", "speedup",
                "identical");
    for (auto& bench : cases) {
        darkbanner::core::set_threads(1);
        std::string serial_digest;
        const double t_serial = seconds_of([&] { serial_digest = bench.run(); });
        darkbanner::core::set_threads(full);
        std::string parallel_digest;
        const double t_parallel = seconds_of([&] { parallel_digest = bench.run(); });
        std::printf("%-28s %12.3f %12.3f %8.2fx  %s\n", bench.name.c_str(), t_serial, t_parallel,
                    t_serial / t_parallel, serial_digest == parallel_digest ? "yes" : "NO");
    }
    return 0;
}
