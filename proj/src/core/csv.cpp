#include "darkbanner/core/csv.hpp"

#include "darkbanner/core/error.hpp"

#include <fstream>
#include <sstream>

namespace darkbanner::core {

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool row_has_data = false;
    std::size_t line = 1;
    std::size_t row_start_line = 1;

    // Leading '#' lines carry provenance on files this tool writes.
    std::size_t start = 0;
    while (start < text.size() && text[start] == '#') {
        while (start < text.size() && text[start] != '\n') ++start;
        if (start < text.size()) ++start;
        ++line;
        row_start_line = line;
    }

    auto end_field = [&]() {
        row.push_back(field);
        field.clear();
    };
    auto end_row = [&]() {
        end_field();
        if (table.header.empty()) {
            table.header = row;
        } else {
            table.rows.push_back(row);
            table.row_lines.push_back(row_start_line);
        }
        row.clear();
        row_has_data = false;
    };

    for (std::size_t i = start; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_has_data = true;
                break;
            case ',':
                end_field();
                row_has_data = true;
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                ++line;
                row_start_line = line;
                break;
            default:
                field.push_back(c);
                row_has_data = true;
                break;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field at end of input");
    if (row_has_data || !field.empty() || !row.empty()) end_row();
    return table;
}

CsvTable read_csv_file(const std::string& path) { return parse_csv(read_text_file(path)); }

std::string escape_csv_field(const std::string& field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string format_csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape_csv_field(fields[i]);
    }
    out.push_back('\n');
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace darkbanner::core
