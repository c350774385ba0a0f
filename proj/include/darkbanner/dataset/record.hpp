#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace darkbanner::dataset {

enum class Pattern : int {
    nagging = 0,
    obstruction = 1,
    sneaking = 2,
    interface_interference = 3,
    forced_action = 4,
};

inline constexpr std::array<Pattern, 5> kPatterns{
    Pattern::nagging, Pattern::obstruction, Pattern::sneaking,
    Pattern::interface_interference, Pattern::forced_action,
};

const std::string& pattern_name(Pattern p);

enum class TriState { yes, no, unknown };
const std::string& tristate_name(TriState t);

enum class Flag { absent, present, missing };

struct AnnotationPair {
    std::string raw_a;
    std::string raw_b;
    Flag a = Flag::missing;
    Flag b = Flag::missing;
};

struct BannerRecord {
    std::string site_id;
    std::string country;
    std::string site_type;
    std::string widget_level_raw;   // cleaned text, e.g. "yes, buttons"
    std::string widget_value;       // "yes"/"no"/"unknown" once cleaned
    std::string widget_comment;     // e.g. "buttons"
    std::string not_yes_text;
    std::string location_raw;
    TriState content_blocking = TriState::unknown;
    std::string content_blocking_note;
    std::optional<long> options_words_count;
    std::optional<long> clicks_to_reject_all;
    std::string not_yes_visibility_raw;
    std::string clarity_comment;
    std::string cookie_listing_comment;
    std::string third_party_raw;
    TriState works_after_reject = TriState::unknown;
    std::string works_after_note;
    // Raw tri-state cells as loaded; cleaning normalizes them into the enums.
    std::string content_blocking_raw;
    std::string works_after_raw;
    std::array<AnnotationPair, 5> annotations;  // kPatterns order
    bool cleaned = false;
};

struct LabelSet {
    std::array<int, 5> codes{};  // kPatterns order, each in {0,1,2}
    int operator[](Pattern p) const { return codes[static_cast<std::size_t>(p)]; }
};

struct SplitIndices {
    std::vector<std::size_t> train_ids;  // ascending
    std::vector<std::size_t> test_ids;   // ascending
    std::uint64_t seed = 0;
    double train_fraction = 0.0;
};

// Normalization table for yes/no/unknown spellings, shipped as a versioned
// data file so cleaning stays auditable.
class TriStateTable {
public:
    static TriStateTable from_tsv(const std::string& content);
    static TriStateTable from_file(const std::string& path);
    static const TriStateTable& builtin();

    std::optional<TriState> lookup(const std::string& normalized) const;
    const std::string& version() const { return version_; }

private:
    std::map<std::string, TriState> entries_;
    std::string version_ = "unversioned";
};

struct LoadReport {
    std::size_t rows = 0;
    struct Cell {
        std::size_t line = 0;
        std::string column;
        std::string value;
    };
    std::vector<Cell> malformed_cells;
    std::vector<Cell> unrecognized_marks;
    std::string tristate_version;
    std::string provider_kind;
};

// Logical field -> CSV header. Defaults follow the corpus headers; a TSV
// override ("field<TAB>header" lines) adapts the loader to a renamed CSV.
class ColumnMap {
public:
    static ColumnMap defaults();
    static ColumnMap from_file(const std::string& path);

    const std::string& header_for(const std::string& field) const;
    std::vector<std::string> required_headers() const;

private:
    std::map<std::string, std::string> header_by_field_;
};

struct LoadResult {
    std::vector<BannerRecord> records;
    std::vector<std::size_t> row_lines;  // 1-based source line per record
    LoadReport report;
};

// One BannerRecord per data row. Unparseable or negative numeric cells
// become flagged missing values recorded in the report, never a crash.
// A missing required column throws MissingColumn.
LoadResult load_raw_csv(const std::string& path, const ColumnMap& columns = ColumnMap::defaults());
LoadResult load_raw_csv_text(const std::string& content,
                             const ColumnMap& columns = ColumnMap::defaults());

// Total and idempotent: trims, collapses interior whitespace, lowercases
// matching fields, normalizes tri-states through the table, and splits
// "value, comment" cells. Unrecognized annotation marks count as absent and
// are recorded in the report when one is given.
BannerRecord clean_record(const BannerRecord& raw,
                          const TriStateTable& table = TriStateTable::builtin(),
                          LoadReport* report = nullptr, std::size_t row_line = 0);

// (absent,absent) -> 0, exactly one present -> 1, (present,present) -> 2.
LabelSet resolve_labels(const std::array<AnnotationPair, 5>& annotations);

// Per-pattern counts of codes {0,1,2}; rows sum to corpus size.
std::array<std::array<std::size_t, 3>, 5> label_histogram(const std::vector<LabelSet>& labels);

// Deterministic shuffle split: |train| = round(fraction * n).
SplitIndices split_train_test(std::size_t n, double train_fraction, std::uint64_t seed);

std::uint64_t split_fingerprint(const SplitIndices& split);

// Whitespace helpers shared with the pipeline's matching rules.
std::string collapse_whitespace(const std::string& s);
std::string to_lower(const std::string& s);

}  // namespace darkbanner::dataset
