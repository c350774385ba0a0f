#pragma once

#include "darkbanner/dataset/record.hpp"
#include "darkbanner/text/provider.hpp"
#include "darkbanner/trees/tree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace darkbanner::pipeline {

// The ten model-facing features of one banner.
struct FeatureVector {
    int notyesclusters = 0;
    std::optional<bool> equalwidgetlevel;
    std::string widgettypelevel = "unknown";  // button/link/box/drop-down/unknown
    std::string location = "unknown";
    std::optional<bool> contentblocking;
    std::optional<double> optionswordscounted;
    std::optional<double> clickstorejectall;
    std::string notyesvisibility = "unknown";  // immediate/scroll/unknown
    double clarityofoptions = 0.0;
    double iscookieusedlisted = 0.0;
};

inline const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names{
        "notyesclusters",   "equalwidgetlevel", "widgettypelevel",  "location",
        "contentblocking",  "optionswordscounted", "clickstorejectall", "notyesvisibility",
        "clarityofoptions", "iscookieusedlisted"};
    return names;
}

// Maps a cleaned record plus its cluster id and the two sentiment scores
// onto the feature set. Widget parity comes from the cleaned value part
// ("yes" means equal); widget type and visibility match on Porter stems.
FeatureVector build_feature_vector(const dataset::BannerRecord& record, int cluster_id,
                                   const text::SentimentResult& clarity,
                                   const text::SentimentResult& cookie_listing);

struct ColumnSpec {
    std::string source_feature;
    std::string kind;      // "onehot" or "numeric"
    std::string category;  // onehot only
};

struct EncodedMatrix {
    trees::Matrix rows;
    std::vector<ColumnSpec> column_spec;
    std::vector<double> imputation_values;      // per column; onehot slots hold 0
    std::vector<std::string> location_vocabulary;  // training-derived, sorted
};

// One-hot for every categorical (cluster ids over [0, n_clusters), fixed
// widget/visibility vocabularies, training-derived location vocabulary plus
// "unknown"); binaries and counts pass through as numerics with missing
// values imputed by the training rows' lower median. Vocabularies and
// medians derive from fit_rows only.
EncodedMatrix encode_features(const std::vector<FeatureVector>& vectors,
                              const std::vector<std::size_t>& fit_rows, int n_clusters = 6);

// Re-encodes a single feature vector against an existing spec; pure in
// (vector, column_spec, imputation_values).
std::vector<double> encode_row(const FeatureVector& fv, const EncodedMatrix& spec);

}  // namespace darkbanner::pipeline
