#include "iontrap/config.hpp"

#include "iontrap/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace iontrap::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& text, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw ConfigError("config: value '" + text + "' for key '" + key +
                          "' is not a number");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

std::vector<double> parse_range(const std::string& text, const std::string& key) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw ConfigError("config: range for key '" + key +
                          "' must be start:stop:steps, got '" + text + "'");
    const double start = parse_double(trim(parts[0]), key);
    const double stop = parse_double(trim(parts[1]), key);
    const double steps_raw = parse_double(trim(parts[2]), key);
    const int steps = static_cast<int>(steps_raw);
    if (steps < 1 || static_cast<double>(steps) != steps_raw)
        throw ConfigError("config: range step count for key '" + key +
                          "' must be a positive integer");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    if (steps == 1) {
        grid.push_back(start);
        return grid;
    }
    for (int i = 0; i < steps; ++i)
        grid.push_back(start + (stop - start) * static_cast<double>(i) / (steps - 1));
    return grid;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("config: cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!section.empty() && key.find('.') == std::string::npos)
            key = section + "." + key;
        if (value.empty())
            throw ConfigError("config: missing value for key '" + key + "'");
        if (cfg.values_.count(key))
            throw ConfigError("config: duplicate key '" + key + "'");
        cfg.values_[key] = value;
    }
    return cfg;
}

std::string Config::raw(const std::string& key) const {
    return values_.at(key);
}

void Config::record(const std::string& key, const std::string& value, bool from_file) const {
    resolved_[key] = Resolved{key, value, from_file ? "config" : "default"};
}

double Config::get_double(const std::string& key, double default_value) const {
    if (!has(key)) {
        record(key, CsvWriter::format_double(default_value), false);
        return default_value;
    }
    const double v = parse_double(raw(key), key);
    record(key, CsvWriter::format_double(v), true);
    return v;
}

int Config::get_int(const std::string& key, int default_value) const {
    if (!has(key)) {
        record(key, std::to_string(default_value), false);
        return default_value;
    }
    const double v = parse_double(raw(key), key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ConfigError("config: value for key '" + key + "' must be an integer");
    record(key, std::to_string(i), true);
    return i;
}

bool Config::get_bool(const std::string& key, bool default_value) const {
    if (!has(key)) {
        record(key, default_value ? "true" : "false", false);
        return default_value;
    }
    const std::string v = raw(key);
    bool out;
    if (v == "true" || v == "1" || v == "yes" || v == "on")
        out = true;
    else if (v == "false" || v == "0" || v == "no" || v == "off")
        out = false;
    else
        throw ConfigError("config: value for key '" + key + "' must be boolean");
    record(key, out ? "true" : "false", true);
    return out;
}

std::string Config::get_string(const std::string& key, const std::string& default_value) const {
    if (!has(key)) {
        record(key, default_value, false);
        return default_value;
    }
    record(key, raw(key), true);
    return raw(key);
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& default_value) const {
    auto render = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + CsvWriter::format_double(v[i]);
        return s;
    };
    if (!has(key)) {
        record(key, render(default_value), false);
        return default_value;
    }
    std::vector<double> out;
    for (const auto& part : split(raw(key), ','))
        out.push_back(parse_double(trim(part), key));
    record(key, render(out), true);
    return out;
}

std::vector<double> Config::get_grid(const std::string& key,
                                     const std::vector<double>& default_value) const {
    if (!has(key)) {
        std::string s;
        for (std::size_t i = 0; i < default_value.size(); ++i)
            s += (i ? "," : "") + CsvWriter::format_double(default_value[i]);
        record(key, s, false);
        return default_value;
    }
    const std::string v = raw(key);
    if (v.find(':') != std::string::npos) {
        auto grid = parse_range(v, key);
        record(key, v, true);
        return grid;
    }
    return get_list(key, default_value);
}

void Config::require_known_keys(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_)
        if (!allowed.count(key))
            throw ConfigError("config: unknown key '" + key + "'");
}

std::vector<Config::Resolved> Config::resolved() const {
    std::vector<Resolved> out;
    out.reserve(resolved_.size());
    for (const auto& [_, r] : resolved_)
        out.push_back(r);
    return out;
}

} // namespace iontrap::cli
