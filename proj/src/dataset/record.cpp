#include "darkbanner/dataset/record.hpp"

#include "darkbanner/core/csv.hpp"
#include "darkbanner/core/error.hpp"
#include "darkbanner/core/rng.hpp"
#include "darkbanner/dataset/tristate_builtin.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace darkbanner::dataset {

const std::string& pattern_name(Pattern p) {
    static const std::array<std::string, 5> names{
        "nagging", "obstruction", "sneaking", "interface_interference", "forced_action"};
    return names[static_cast<std::size_t>(p)];
}

const std::string& tristate_name(TriState t) {
    static const std::array<std::string, 3> names{"yes", "no", "unknown"};
    return names[static_cast<std::size_t>(t)];
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    bool in_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            in_space = true;
            continue;
        }
        if (in_space && !out.empty()) out.push_back(' ');
        in_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

TriStateTable TriStateTable::from_tsv(const std::string& content) {
    TriStateTable table;
    std::istringstream in(content);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.rfind("#", 0) == 0) table.version_ = line.substr(1);
        first = false;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("tristate line without tab: " + line);
        const std::string key = collapse_whitespace(to_lower(line.substr(0, tab)));
        const std::string value = collapse_whitespace(to_lower(line.substr(tab + 1)));
        TriState state;
        if (value == "yes") state = TriState::yes;
        else if (value == "no") state = TriState::no;
        else if (value == "unknown") state = TriState::unknown;
        else throw ParseError("tristate value must be yes/no/unknown: " + line);
        table.entries_[key] = state;
    }
    return table;
}

TriStateTable TriStateTable::from_file(const std::string& path) {
    return from_tsv(core::read_text_file(path));
}

const TriStateTable& TriStateTable::builtin() {
    static const TriStateTable table = from_tsv(kBuiltinTriStateTsv);
    return table;
}

std::optional<TriState> TriStateTable::lookup(const std::string& normalized) const {
    const auto it = entries_.find(normalized);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

namespace {

const std::array<std::string, 5> kReviewerPrefixes{
    "nagging", "obstruction", "sneaking", "interface_interference", "forced_action"};

struct FieldNames {
    static std::vector<std::pair<std::string, std::string>> defaults() {
        std::vector<std::pair<std::string, std::string>> v{
            {"site_id", "siteid"},
            {"country", "country"},
            {"site_type", "type"},
            {"widget_level", "widgetlevel"},
            {"not_yes_text", "nameofnotyesoption"},
            {"location", "location"},
            {"content_blocking", "contentblocking"},
            {"options_words_count", "optionswordscount"},
            {"clicks_to_reject_all", "clickstorejecttall"},
            {"cookie_listing_comment", "iscookieusedlisted"},
            {"third_party", "thirdparty"},
            {"works_after_reject", "siteworkafterrejectingcoookies"},
            {"clarity_comment", "clarityofoptions"},
            {"not_yes_visibility", "notyesvisiblity"},
        };
        for (const auto& p : kReviewerPrefixes) {
            v.emplace_back(p + "_r1", p + "_r1");
            v.emplace_back(p + "_r2", p + "_r2");
        }
        return v;
    }
};

// "value, comment" -> (value, comment) when the first segment normalizes
// through the table; otherwise the whole cell is the value.
std::pair<std::string, std::string> split_value_comment(const std::string& cell,
                                                        const TriStateTable& table) {
    const auto comma = cell.find(',');
    if (comma == std::string::npos) return {collapse_whitespace(cell), ""};
    const std::string head = collapse_whitespace(cell.substr(0, comma));
    if (table.lookup(to_lower(head)).has_value()) {
        return {head, collapse_whitespace(cell.substr(comma + 1))};
    }
    return {collapse_whitespace(cell), ""};
}

TriState normalize_tristate(const std::string& value, const TriStateTable& table) {
    const auto found = table.lookup(collapse_whitespace(to_lower(value)));
    return found.value_or(TriState::unknown);
}

Flag normalize_mark(const std::string& raw, const TriStateTable& table, bool* recognized) {
    const std::string key = collapse_whitespace(to_lower(raw));
    if (key.empty()) {
        *recognized = true;  // empty cell is a plain "not noted"
        return Flag::absent;
    }
    const auto found = table.lookup(key);
    // Ambiguous marks ("maybe", unrecognized text) count as absent and get
    // surfaced in the report; clear yes/no marks pass silently.
    *recognized = found.has_value() && *found != TriState::unknown;
    return (found.has_value() && *found == TriState::yes) ? Flag::present : Flag::absent;
}

}  // namespace

ColumnMap ColumnMap::defaults() {
    ColumnMap map;
    for (const auto& [field, header] : FieldNames::defaults()) map.header_by_field_[field] = header;
    return map;
}

ColumnMap ColumnMap::from_file(const std::string& path) {
    ColumnMap map = defaults();
    std::istringstream in(core::read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("column map line without tab: " + line);
        const std::string field = line.substr(0, tab);
        if (map.header_by_field_.find(field) == map.header_by_field_.end()) {
            throw ParseError("column map names unknown field: " + field);
        }
        map.header_by_field_[field] = line.substr(tab + 1);
    }
    return map;
}

const std::string& ColumnMap::header_for(const std::string& field) const {
    const auto it = header_by_field_.find(field);
    if (it == header_by_field_.end()) throw ParseError("unknown logical field: " + field);
    return it->second;
}

std::vector<std::string> ColumnMap::required_headers() const {
    std::vector<std::string> out;
    for (const auto& [field, header] : header_by_field_) out.push_back(header);
    return out;
}

LoadResult load_raw_csv(const std::string& path, const ColumnMap& columns) {
    return load_raw_csv_text(core::read_text_file(path), columns);
}

LoadResult load_raw_csv_text(const std::string& content, const ColumnMap& columns) {
    const core::CsvTable table = core::parse_csv(content);
    LoadResult result;

    std::map<std::string, int> index_by_field;
    for (const auto& [field, unused] : FieldNames::defaults()) {
        (void)unused;
        const std::string& header = columns.header_for(field);
        const int idx = table.column_index(header);
        if (idx < 0) throw MissingColumn(header);
        index_by_field[field] = idx;
    }

    auto parse_count = [&](const std::string& cell, const std::string& column, std::size_t line,
                           LoadReport& report) -> std::optional<long> {
        const std::string v = collapse_whitespace(cell);
        if (v.empty()) return std::nullopt;
        char* end = nullptr;
        const long n = std::strtol(v.c_str(), &end, 10);
        if (end == v.c_str() || *end != '\0' || n < 0) {
            report.malformed_cells.push_back({line, column, cell});
            return std::nullopt;
        }
        return n;
    };

    result.records.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        std::vector<std::string> row = table.rows[r];
        const std::size_t line = table.row_lines[r];
        if (row.size() != table.header.size()) {
            result.report.malformed_cells.push_back(
                {line, "<row>", "expected " + std::to_string(table.header.size()) +
                                     " fields, got " + std::to_string(row.size())});
            row.resize(table.header.size());
        }
        auto cell = [&](const char* field) -> const std::string& {
            return row[static_cast<std::size_t>(index_by_field.at(field))];
        };

        BannerRecord rec;
        rec.site_id = cell("site_id");
        rec.country = cell("country");
        rec.site_type = cell("site_type");
        rec.widget_level_raw = cell("widget_level");
        rec.not_yes_text = cell("not_yes_text");
        rec.location_raw = cell("location");
        rec.content_blocking_raw = cell("content_blocking");
        rec.options_words_count =
            parse_count(cell("options_words_count"), columns.header_for("options_words_count"),
                        line, result.report);
        rec.clicks_to_reject_all =
            parse_count(cell("clicks_to_reject_all"), columns.header_for("clicks_to_reject_all"),
                        line, result.report);
        rec.cookie_listing_comment = cell("cookie_listing_comment");
        rec.third_party_raw = cell("third_party");
        rec.works_after_raw = cell("works_after_reject");
        rec.clarity_comment = cell("clarity_comment");
        rec.not_yes_visibility_raw = cell("not_yes_visibility");
        for (std::size_t p = 0; p < kPatterns.size(); ++p) {
            rec.annotations[p].raw_a = cell((kReviewerPrefixes[p] + "_r1").c_str());
            rec.annotations[p].raw_b = cell((kReviewerPrefixes[p] + "_r2").c_str());
        }
        result.records.push_back(std::move(rec));
        result.row_lines.push_back(line);
    }
    result.report.rows = result.records.size();

    // site_id must be non-empty and unique; violations are reported, not fatal.
    std::map<std::string, std::size_t> seen;
    for (std::size_t r = 0; r < result.records.size(); ++r) {
        const std::string id = collapse_whitespace(result.records[r].site_id);
        const std::string& column = columns.header_for("site_id");
        if (id.empty()) {
            result.report.malformed_cells.push_back({result.row_lines[r], column, "<empty siteid>"});
            continue;
        }
        const auto [it, inserted] = seen.emplace(id, r);
        if (!inserted) {
            result.report.malformed_cells.push_back(
                {result.row_lines[r], column, "duplicate siteid '" + id + "'"});
        }
    }
    return result;
}

BannerRecord clean_record(const BannerRecord& raw, const TriStateTable& table,
                          LoadReport* report, std::size_t row_line) {
    BannerRecord rec = raw;

    rec.site_id = collapse_whitespace(rec.site_id);
    rec.country = collapse_whitespace(rec.country);
    rec.site_type = collapse_whitespace(rec.site_type);
    rec.not_yes_text = collapse_whitespace(rec.not_yes_text);
    rec.clarity_comment = collapse_whitespace(rec.clarity_comment);
    rec.cookie_listing_comment = collapse_whitespace(rec.cookie_listing_comment);

    rec.location_raw = collapse_whitespace(to_lower(rec.location_raw));
    rec.not_yes_visibility_raw = collapse_whitespace(to_lower(rec.not_yes_visibility_raw));
    rec.third_party_raw = collapse_whitespace(to_lower(rec.third_party_raw));

    rec.widget_level_raw = collapse_whitespace(to_lower(rec.widget_level_raw));
    auto [wvalue, wcomment] = split_value_comment(rec.widget_level_raw, table);
    const auto wstate = table.lookup(to_lower(wvalue));
    rec.widget_value = wstate ? tristate_name(*wstate) : "unknown";
    rec.widget_comment = wcomment;

    rec.content_blocking_raw = collapse_whitespace(to_lower(rec.content_blocking_raw));
    auto [cvalue, cnote] = split_value_comment(rec.content_blocking_raw, table);
    rec.content_blocking = normalize_tristate(cvalue, table);
    rec.content_blocking_note = cnote;

    rec.works_after_raw = collapse_whitespace(to_lower(rec.works_after_raw));
    auto [wavalue, wanote] = split_value_comment(rec.works_after_raw, table);
    rec.works_after_reject = normalize_tristate(wavalue, table);
    rec.works_after_note = wanote;

    for (std::size_t p = 0; p < kPatterns.size(); ++p) {
        auto& pair = rec.annotations[p];
        pair.raw_a = collapse_whitespace(to_lower(pair.raw_a));
        pair.raw_b = collapse_whitespace(to_lower(pair.raw_b));
        bool ok_a = false;
        bool ok_b = false;
        pair.a = normalize_mark(pair.raw_a, table, &ok_a);
        pair.b = normalize_mark(pair.raw_b, table, &ok_b);
        if (report) {
            if (!ok_a) {
                report->unrecognized_marks.push_back(
                    {row_line, kReviewerPrefixes[p] + "_r1", pair.raw_a});
            }
            if (!ok_b) {
                report->unrecognized_marks.push_back(
                    {row_line, kReviewerPrefixes[p] + "_r2", pair.raw_b});
            }
        }
    }

    rec.cleaned = true;
    return rec;
}

LabelSet resolve_labels(const std::array<AnnotationPair, 5>& annotations) {
    LabelSet labels;
    for (std::size_t p = 0; p < annotations.size(); ++p) {
        const auto& pair = annotations[p];
        if (pair.a == Flag::missing || pair.b == Flag::missing) {
            throw MissingAnnotation(pattern_name(kPatterns[p]));
        }
        const int present = (pair.a == Flag::present ? 1 : 0) + (pair.b == Flag::present ? 1 : 0);
        labels.codes[p] = present;
    }
    return labels;
}

std::array<std::array<std::size_t, 3>, 5> label_histogram(const std::vector<LabelSet>& labels) {
    std::array<std::array<std::size_t, 3>, 5> hist{};
    for (const auto& set : labels) {
        for (std::size_t p = 0; p < 5; ++p) {
            hist[p][static_cast<std::size_t>(set.codes[p])] += 1;
        }
    }
    return hist;
}

SplitIndices split_train_test(std::size_t n, double train_fraction, std::uint64_t seed) {
    if (n < 2) throw TooFewSamples("split requires n >= 2");
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw InvalidFraction(train_fraction);

    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    core::Rng rng(core::derive_seed(seed, 0x5917));
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(ids[i], ids[rng.uniform_index(i + 1)]);
    }

    const auto train_count = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(n)));
    SplitIndices split;
    split.seed = seed;
    split.train_fraction = train_fraction;
    split.train_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(train_count));
    split.test_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(train_count), ids.end());
    std::sort(split.train_ids.begin(), split.train_ids.end());
    std::sort(split.test_ids.begin(), split.test_ids.end());
    return split;
}

std::uint64_t split_fingerprint(const SplitIndices& split) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h = (h ^ ((v >> (8 * i)) & 0xFF)) * 0x100000001B3ULL;
        }
    };
    mix(split.seed);
    mix(static_cast<std::uint64_t>(split.train_ids.size()));
    for (const auto id : split.train_ids) mix(id);
    for (const auto id : split.test_ids) mix(id);
    return h;
}

}  // namespace darkbanner::dataset
