#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iontrap/errors.hpp"

namespace iontrap::cli {

/// Flat key = value configuration with [section] headers; a key inside
/// [trap] named axial_freq_hz resolves to "trap.axial_freq_hz". Values may
/// be scalars, comma-separated lists, or ranges "start:stop:steps" (steps =
/// inclusive point count). '#' and ';' start comments. Every lookup records
/// the resolved value and whether it came from the file or a default, so a
/// run manifest can list every parameter with its provenance.
class Config {
public:
    Config() = default;

    /// Parse a config file. Unreadable file -> IoError; malformed line or an
    /// empty value -> ConfigError naming the offender.
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    double get_double(const std::string& key, double default_value) const;
    int get_int(const std::string& key, int default_value) const;
    bool get_bool(const std::string& key, bool default_value) const;
    std::string get_string(const std::string& key, const std::string& default_value) const;

    /// Comma list or single scalar as a vector.
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& default_value) const;

    /// Range "start:stop:steps" (or list/scalar) as an explicit grid.
    std::vector<double> get_grid(const std::string& key,
                                 const std::vector<double>& default_value) const;

    /// Reject any key in the file that is not in `allowed`; the error names
    /// the first offending key.
    void require_known_keys(const std::set<std::string>& allowed) const;

    /// Every key consumed so far: key, rendered value, "config" or "default".
    struct Resolved {
        std::string key;
        std::string value;
        std::string source;
    };
    std::vector<Resolved> resolved() const;

private:
    std::string raw(const std::string& key) const;
    void record(const std::string& key, const std::string& value, bool from_file) const;

    std::map<std::string, std::string> values_;
    mutable std::map<std::string, Resolved> resolved_;
};

/// Parse a range expression "start:stop:steps" into an inclusive linear grid.
std::vector<double> parse_range(const std::string& text, const std::string& key);

} // namespace iontrap::cli
