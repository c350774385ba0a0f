#pragma once

#include "darkbanner/embed/kmeans.hpp"
#include "darkbanner/embed/pca.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace darkbanner::embed {

struct ClusterAssignment {
    std::string phrase;
    std::size_t cluster_id = 0;
    double x = 0.0;
    double y = 0.0;
};

struct PhraseClustering {
    std::vector<ClusterAssignment> assignments;  // one per input phrase, input order
    KMeansModel kmeans;                          // centroids in renumbered order
    PcaModel pca;
    std::vector<std::pair<double, double>> centroid_xy;  // per renumbered cluster
};

// Canonical form used for clustering: Porter stems of the phrase tokens,
// sorted and space-joined. Phrases with equal stemmed token multisets thus
// embed identically and always share a cluster.
std::string canonical_phrase(const std::string& phrase);

// Embeds canonical phrases, fits k-means in 512-D, fits 2-D PCA for display
// only, and renumbers clusters by ascending first PCA coordinate of their
// centroid so ids are stable for a given seed. Requires at least k distinct
// canonical forms (a tighter precondition than distinct surface phrases,
// without which k non-empty clusters cannot exist) and at least 2 phrases.
PhraseClustering cluster_phrases(const std::vector<std::string>& phrases, std::size_t k,
                                 std::uint64_t seed);

}  // namespace darkbanner::embed
