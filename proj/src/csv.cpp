#include "iontrap/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace iontrap::cli {

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

std::string quote(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string CsvWriter::format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty())
        throw DomainError("CsvWriter: header row is mandatory");
}

void CsvWriter::add_row(std::vector<Cell> cells) {
    if (cells.size() != header_.size())
        throw DomainError("CsvWriter: row width " + std::to_string(cells.size()) +
                          " does not match header width " + std::to_string(header_.size()));
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += quote(header_[i]);
    }
    out += "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (std::holds_alternative<double>(row[i]))
                out += format_double(std::get<double>(row[i]));
            else if (std::holds_alternative<long long>(row[i]))
                out += std::to_string(std::get<long long>(row[i]));
            else
                out += quote(std::get<std::string>(row[i]));
        }
        out += "\r\n";
    }
    return out;
}

std::string CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("csv: cannot open '" + path + "' for writing");
    const std::string body = to_string();
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out)
        throw IoError("csv: short write to '" + path + "'");
    return path;
}

CsvTable CsvTable::read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("csv: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();

    CsvTable table;
    std::vector<std::string> row;
    std::string cell;
    bool in_quotes = false;
    bool header_done = false;
    auto end_cell = [&]() {
        row.push_back(cell);
        cell.clear();
    };
    auto end_row = [&]() {
        end_cell();
        if (!header_done) {
            table.header = row;
            header_done = true;
        } else {
            table.rows.push_back(row);
        }
        row.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            end_cell();
        } else if (c == '\r') {
            // swallow; the matching \n ends the row
        } else if (c == '\n') {
            end_row();
        } else {
            cell += c;
        }
    }
    if (!cell.empty() || !row.empty()) end_row(); // tolerate missing final newline
    if (!header_done)
        throw DomainError("csv: '" + path + "' is empty (header row mandatory)");
    return table;
}

} // namespace iontrap::cli
