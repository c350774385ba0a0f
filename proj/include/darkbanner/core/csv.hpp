#pragma once

#include <string>
#include <vector>

namespace darkbanner::core {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // 1-based line number of the first physical line of each row (quoted
    // fields may span lines, so row index and line number can diverge).
    std::vector<std::size_t> row_lines;

    int column_index(const std::string& name) const;
};

// RFC 4180 style: comma separated, optional double-quoted fields with ""
// escapes, CRLF or LF line endings, embedded newlines inside quotes.
CsvTable parse_csv(const std::string& text);
CsvTable read_csv_file(const std::string& path);

std::string escape_csv_field(const std::string& field);
std::string format_csv_row(const std::vector<std::string>& fields);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace darkbanner::core
