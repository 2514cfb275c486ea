#include "qaw/report.hpp"

#include "qaw/errors.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>

namespace qaw {

namespace {

std::string csv_field(const std::string& value) {
    bool needs_quotes = value.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_line(const ReportRow& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_field(row[i]);
    }
    out.push_back('\n');
    return out;
}

std::string timestamp_line() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return std::string("# generated ") + buf + "\n";
}

void check_widths(const ReportTable& table) {
    for (const ReportRow& row : table.rows) {
        if (row.size() != table.header.size()) {
            throw ContractViolation("report row width " + std::to_string(row.size()) +
                                    " does not match header width " +
                                    std::to_string(table.header.size()));
        }
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write report file: " + path.string());
    return out;
}

}  // namespace

std::string to_csv(const ReportTable& table) {
    check_widths(table);
    std::string out = csv_line(table.header);
    for (const ReportRow& row : table.rows) out += csv_line(row);
    return out;
}

void write_csv(const std::filesystem::path& path, const ReportTable& table, bool timestamp) {
    std::ofstream out = open_out(path);
    if (timestamp) out << timestamp_line();
    out << to_csv(table);
}

ReportTable parse_csv(const std::string& content) {
    ReportTable table;
    std::vector<ReportRow> rows;
    ReportRow current;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    std::size_t i = 0;
    auto end_field = [&] {
        current.push_back(field);
        field.clear();
    };
    auto end_row = [&] {
        if (!row_started) return;
        end_field();
        if (current.size() == 1 && !current[0].empty() && current[0][0] == '#') {
            // comment line
        } else {
            rows.push_back(current);
        }
        current.clear();
        row_started = false;
    };

    while (i < content.size()) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            ++i;
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                row_started = true;
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_row();
                break;
            default:
                row_started = true;
                field.push_back(c);
        }
        ++i;
    }
    end_row();

    if (rows.empty()) throw DataError("CSV content has no header row");
    table.header = rows.front();
    table.rows.assign(rows.begin() + 1, rows.end());
    return table;
}

std::string to_text_table(const ReportTable& table) {
    check_widths(table);
    std::vector<std::size_t> widths(table.header.size(), 0);
    for (std::size_t c = 0; c < table.header.size(); ++c) widths[c] = table.header[c].size();
    for (const ReportRow& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    auto render_row = [&](const ReportRow& row) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            line += row[c];
            if (c + 1 < row.size()) line.append(widths[c] - row[c].size(), ' ');
        }
        line.push_back('\n');
        return line;
    };
    std::string out = render_row(table.header);
    std::size_t total = 0;
    for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 2 : 0);
    out.append(total, '-');
    out.push_back('\n');
    for (const ReportRow& row : table.rows) out += render_row(row);
    return out;
}

void write_text_table(const std::filesystem::path& path, const ReportTable& table, bool timestamp) {
    std::ofstream out = open_out(path);
    if (timestamp) out << timestamp_line();
    out << to_text_table(table);
}

}  // namespace qaw
