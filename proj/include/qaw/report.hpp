#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace qaw {

using ReportRow = std::vector<std::string>;

struct ReportTable {
    ReportRow header;
    std::vector<ReportRow> rows;
};

// RFC-4180 quoting; every row must match the header width. An optional
// "# generated ..." comment line precedes the header unless disabled.
void write_csv(const std::filesystem::path& path, const ReportTable& table, bool timestamp);

std::string to_csv(const ReportTable& table);

// Parses CSV text back into header + rows ('#' comment lines skipped).
ReportTable parse_csv(const std::string& content);

// Column-aligned plain-text rendering of the same table.
void write_text_table(const std::filesystem::path& path, const ReportTable& table, bool timestamp);

std::string to_text_table(const ReportTable& table);

}  // namespace qaw
