#include "darkbanner/pipeline/features.hpp"

#include "darkbanner/core/error.hpp"
#include "darkbanner/text/porter.hpp"
#include "darkbanner/text/tokenize.hpp"

#include <algorithm>
#include <set>

namespace darkbanner::pipeline {

namespace {

bool stems_contain(const std::vector<std::string>& stems, const std::string& word) {
    const std::string target = text::porter_stem(word);
    return std::find(stems.begin(), stems.end(), target) != stems.end();
}

std::string widget_type_from_comment(const std::string& comment) {
    const auto stems = text::stem_tokens(text::tokenize(comment));
    if (stems_contain(stems, "button")) return "button";
    if (stems_contain(stems, "link")) return "link";
    if (stems_contain(stems, "box")) return "box";
    if (stems_contain(stems, "dropdown") ||
        (stems_contain(stems, "drop") && stems_contain(stems, "down"))) {
        return "drop-down";
    }
    return "unknown";
}

std::string visibility_from_text(const std::string& raw) {
    const auto stems = text::stem_tokens(text::tokenize(raw));
    if (stems_contain(stems, "immediate")) return "immediate";
    if (stems_contain(stems, "scroll")) return "scroll";
    return "unknown";
}

std::optional<bool> tristate_to_bool(dataset::TriState t) {
    switch (t) {
        case dataset::TriState::yes: return true;
        case dataset::TriState::no: return false;
        default: return std::nullopt;
    }
}

double lower_median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    return values[(values.size() - 1) / 2];
}

constexpr const char* kWidgetVocab[] = {"button", "link", "box", "drop-down", "unknown"};
constexpr const char* kVisibilityVocab[] = {"immediate", "scroll", "unknown"};

}  // namespace

FeatureVector build_feature_vector(const dataset::BannerRecord& record, int cluster_id,
                                   const text::SentimentResult& clarity,
                                   const text::SentimentResult& cookie_listing) {
    FeatureVector fv;
    fv.notyesclusters = cluster_id;

    if (record.widget_value == "yes") fv.equalwidgetlevel = true;
    else if (record.widget_value == "no") fv.equalwidgetlevel = false;

    fv.widgettypelevel = widget_type_from_comment(record.widget_comment);
    fv.location = record.location_raw.empty() ? "unknown" : record.location_raw;
    fv.contentblocking = tristate_to_bool(record.content_blocking);
    if (record.options_words_count) {
        fv.optionswordscounted = static_cast<double>(*record.options_words_count);
    }
    if (record.clicks_to_reject_all) {
        fv.clickstorejectall = static_cast<double>(*record.clicks_to_reject_all);
    }
    fv.notyesvisibility = visibility_from_text(record.not_yes_visibility_raw);
    fv.clarityofoptions = clarity.score;
    fv.iscookieusedlisted = cookie_listing.score;
    return fv;
}

EncodedMatrix encode_features(const std::vector<FeatureVector>& vectors,
                              const std::vector<std::size_t>& fit_rows, int n_clusters) {
    if (fit_rows.empty()) throw EmptyData();
    for (const auto r : fit_rows) {
        if (r >= vectors.size()) throw ShapeMismatch("fit row index out of range");
    }

    EncodedMatrix out;

    // Location vocabulary is learned on the fit rows; anything unseen falls
    // into the trailing "unknown" slot.
    std::set<std::string> locations;
    for (const auto r : fit_rows) {
        if (vectors[r].location != "unknown") locations.insert(vectors[r].location);
    }
    out.location_vocabulary.assign(locations.begin(), locations.end());

    auto add_onehot = [&out](const std::string& source, const std::string& category) {
        out.column_spec.push_back(ColumnSpec{source, "onehot", category});
        out.imputation_values.push_back(0.0);
    };
    auto add_numeric = [&out](const std::string& source, double imputation) {
        out.column_spec.push_back(ColumnSpec{source, "numeric", ""});
        out.imputation_values.push_back(imputation);
    };

    auto median_of = [&](auto&& getter) {
        std::vector<double> present;
        for (const auto r : fit_rows) {
            if (const auto v = getter(vectors[r])) present.push_back(*v);
        }
        return lower_median(std::move(present));
    };
    const double equal_widget_median = median_of([](const FeatureVector& f) {
        return f.equalwidgetlevel ? std::optional<double>(*f.equalwidgetlevel ? 1.0 : 0.0)
                                  : std::nullopt;
    });
    const double blocking_median = median_of([](const FeatureVector& f) {
        return f.contentblocking ? std::optional<double>(*f.contentblocking ? 1.0 : 0.0)
                                 : std::nullopt;
    });
    const double words_median =
        median_of([](const FeatureVector& f) { return f.optionswordscounted; });
    const double clicks_median =
        median_of([](const FeatureVector& f) { return f.clickstorejectall; });

    for (int c = 0; c < n_clusters; ++c) add_onehot("notyesclusters", std::to_string(c));
    add_numeric("equalwidgetlevel", equal_widget_median);
    for (const char* v : kWidgetVocab) add_onehot("widgettypelevel", v);
    for (const auto& v : out.location_vocabulary) add_onehot("location", v);
    add_onehot("location", "unknown");
    add_numeric("contentblocking", blocking_median);
    add_numeric("optionswordscounted", words_median);
    add_numeric("clickstorejectall", clicks_median);
    for (const char* v : kVisibilityVocab) add_onehot("notyesvisibility", v);
    add_numeric("clarityofoptions", 0.0);
    add_numeric("iscookieusedlisted", 0.0);

    out.rows.reserve(vectors.size());
    for (const auto& fv : vectors) out.rows.push_back(encode_row(fv, out));
    return out;
}

std::vector<double> encode_row(const FeatureVector& fv, const EncodedMatrix& spec) {
    std::vector<double> row;
    row.reserve(spec.column_spec.size());

    auto onehot_value = [&](const ColumnSpec& col) -> double {
        const std::string& source = col.source_feature;
        if (source == "notyesclusters") {
            return std::to_string(fv.notyesclusters) == col.category ? 1.0 : 0.0;
        }
        if (source == "widgettypelevel") return fv.widgettypelevel == col.category ? 1.0 : 0.0;
        if (source == "notyesvisibility") return fv.notyesvisibility == col.category ? 1.0 : 0.0;
        // location: unseen values map onto the trailing "unknown" slot.
        const bool known =
            std::find(spec.location_vocabulary.begin(), spec.location_vocabulary.end(),
                      fv.location) != spec.location_vocabulary.end();
        if (col.category == "unknown") return known ? 0.0 : 1.0;
        return known && fv.location == col.category ? 1.0 : 0.0;
    };

    for (std::size_t i = 0; i < spec.column_spec.size(); ++i) {
        const auto& col = spec.column_spec[i];
        if (col.kind == "onehot") {
            row.push_back(onehot_value(col));
            continue;
        }
        const std::string& source = col.source_feature;
        std::optional<double> value;
        if (source == "equalwidgetlevel") {
            if (fv.equalwidgetlevel) value = *fv.equalwidgetlevel ? 1.0 : 0.0;
        } else if (source == "contentblocking") {
            if (fv.contentblocking) value = *fv.contentblocking ? 1.0 : 0.0;
        } else if (source == "optionswordscounted") {
            value = fv.optionswordscounted;
        } else if (source == "clickstorejectall") {
            value = fv.clickstorejectall;
        } else if (source == "clarityofoptions") {
            value = fv.clarityofoptions;
        } else if (source == "iscookieusedlisted") {
            value = fv.iscookieusedlisted;
        }
        row.push_back(value.value_or(spec.imputation_values[i]));
    }
    return row;
}

}  // namespace darkbanner::pipeline
