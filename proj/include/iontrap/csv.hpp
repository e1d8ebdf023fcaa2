#pragma once

#include <string>
#include <variant>
#include <vector>

#include "iontrap/errors.hpp"

namespace iontrap::cli {

/// RFC-4180 CSV with a mandatory header row. Floats are rendered with 17
/// significant digits so equal doubles round-trip to identical bytes and
/// re-runs can be compared bit for bit.
class CsvWriter {
public:
    using Cell = std::variant<double, long long, std::string>;

    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<Cell> cells);

    /// Serialize (CRLF line endings per RFC-4180).
    std::string to_string() const;

    /// Write to disk; IoError on failure. Returns the path.
    std::string write(const std::string& path) const;

    static std::string format_double(double v);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Parsed CSV for comparisons: header plus string cells (numeric parsing is
/// the comparator's business).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    static CsvTable read(const std::string& path);
};

} // namespace iontrap::cli
