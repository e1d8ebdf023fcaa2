#include "iontrap/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <set>

#include "iontrap/csv.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::cli {

namespace {

namespace fs = std::filesystem;

std::set<std::string> csv_names(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw IoError("compare: '" + dir + "' is not a directory");
    std::set<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv")
            names.insert(e.path().filename().string());
    return names;
}

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc{} && res.ptr == end;
}

double relative_difference(double a, double b) {
    if (a == b) return 0.0; // covers signed zeros and shared infinities
    const double scale = std::max(std::abs(a), std::abs(b));
    if (std::isnan(a) || std::isnan(b) || !std::isfinite(scale))
        return std::numeric_limits<double>::infinity();
    return std::abs(a - b) / scale;
}

} // namespace

CompareReport compare_runs(const std::string& dir_a, const std::string& dir_b,
                           double rel_tolerance) {
    if (!(rel_tolerance >= 0.0))
        throw DomainError("compare: tolerance must be non-negative");

    const auto names_a = csv_names(dir_a);
    const auto names_b = csv_names(dir_b);
    if (names_a.empty() && names_b.empty())
        throw DomainError("compare: no CSV files found in either directory");
    for (const auto& n : names_a)
        if (!names_b.count(n))
            throw DomainError("compare: '" + n + "' present in " + dir_a + " but missing in " +
                              dir_b);
    for (const auto& n : names_b)
        if (!names_a.count(n))
            throw DomainError("compare: '" + n + "' present in " + dir_b + " but missing in " +
                              dir_a);

    CompareReport report;
    report.rel_tolerance = rel_tolerance;
    for (const auto& name : names_a) {
        const auto table_a = CsvTable::read((fs::path(dir_a) / name).string());
        const auto table_b = CsvTable::read((fs::path(dir_b) / name).string());
        if (table_a.header != table_b.header)
            throw DomainError("compare: header mismatch in '" + name + "'");
        if (table_a.rows.size() != table_b.rows.size())
            throw DomainError("compare: row count mismatch in '" + name + "' (" +
                              std::to_string(table_a.rows.size()) + " vs " +
                              std::to_string(table_b.rows.size()) + ")");

        for (std::size_t col = 0; col < table_a.header.size(); ++col) {
            ColumnDiff diff;
            diff.file = name;
            diff.column = table_a.header[col];
            for (std::size_t row = 0; row < table_a.rows.size(); ++row) {
                const std::string& cell_a = table_a.rows[row][col];
                const std::string& cell_b = table_b.rows[row][col];
                double va = 0.0, vb = 0.0;
                const bool num_a = parse_number(cell_a, va);
                const bool num_b = parse_number(cell_b, vb);
                if (num_a != num_b)
                    throw DomainError("compare: cell type mismatch in '" + name + "' column '" +
                                      diff.column + "' row " + std::to_string(row));
                if (!num_a) {
                    if (cell_a != cell_b) {
                        diff.text_mismatches += 1;
                        diff.max_rel = std::numeric_limits<double>::infinity();
                    }
                    continue;
                }
                const double rel = relative_difference(va, vb);
                if (rel > diff.max_rel) {
                    diff.max_rel = rel;
                    diff.worst_row = static_cast<long long>(row);
                    diff.value_a = va;
                    diff.value_b = vb;
                }
            }
            report.columns.push_back(std::move(diff));
        }
    }

    report.max_rel = 0.0;
    for (const auto& d : report.columns)
        report.max_rel = std::max(report.max_rel, d.max_rel);
    report.within_tolerance = report.max_rel <= rel_tolerance;
    return report;
}

} // namespace iontrap::cli
