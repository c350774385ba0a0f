#include "darkbanner/embed/cluster.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/core/parallel.hpp"
#include "darkbanner/text/porter.hpp"
#include "darkbanner/text/tokenize.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace darkbanner::embed {

std::string canonical_phrase(const std::string& phrase) {
    auto stems = text::stem_tokens(text::tokenize(phrase));
    std::sort(stems.begin(), stems.end());
    return text::join_tokens(stems);
}

PhraseClustering cluster_phrases(const std::vector<std::string>& phrases, std::size_t k,
                                 std::uint64_t seed) {
    if (phrases.size() < 2) throw TooFewPoints("need at least 2 phrases");

    std::vector<std::string> canonical(phrases.size());
    for (std::size_t i = 0; i < phrases.size(); ++i) canonical[i] = canonical_phrase(phrases[i]);

    const std::set<std::string> distinct(canonical.begin(), canonical.end());
    if (distinct.size() < k) {
        throw TooFewPoints(std::to_string(distinct.size()) + " distinct phrase forms for k=" +
                           std::to_string(k));
    }

    std::vector<Vector> points(phrases.size());
    core::parallel_for(phrases.size(), [&](std::size_t i) { points[i] = embed_text(canonical[i]); });

    KMeansOptions options;
    options.k = k;
    options.seed = seed;
    KMeansModel kmeans = fit_kmeans(points, options);
    PcaModel pca = fit_pca(points, 2);

    // Renumber clusters by ascending first PCA coordinate of their centroid.
    std::vector<std::pair<double, double>> xy(k);
    for (std::size_t c = 0; c < k; ++c) xy[c] = project_2d(pca, kmeans.centroids[c]);
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xy[a].first < xy[b].first; });
    std::vector<std::size_t> new_id(k);
    for (std::size_t rank = 0; rank < k; ++rank) new_id[order[rank]] = rank;

    PhraseClustering result;
    result.pca = std::move(pca);
    result.kmeans.k = k;
    result.kmeans.inertia = kmeans.inertia;
    result.kmeans.seed = kmeans.seed;
    result.kmeans.iterations_run = kmeans.iterations_run;
    result.kmeans.centroids.resize(k);
    result.centroid_xy.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        result.kmeans.centroids[new_id[c]] = std::move(kmeans.centroids[c]);
        result.centroid_xy[new_id[c]] = xy[c];
    }
    result.kmeans.assignments.resize(points.size());
    result.assignments.resize(phrases.size());
    for (std::size_t i = 0; i < phrases.size(); ++i) {
        const std::size_t c = new_id[kmeans.assignments[i]];
        result.kmeans.assignments[i] = c;
        const auto [px, py] = project_2d(result.pca, points[i]);
        result.assignments[i] = ClusterAssignment{phrases[i], c, px, py};
    }
    return result;
}

}  // namespace darkbanner::embed
