#pragma once

#include <map>
#include <string>
#include <vector>

namespace thermdec::runconfig {

// Minimal TOML-style config reader covering what the CLI needs: [sections],
// key = number | true/false | "string" | [n1, n2, ...], and # comments.
// Anything else is a config_error with the offending line number.

struct Value {
    enum class Kind { number, boolean, string, array };
    Kind kind = Kind::number;
    double num = 0.0;
    bool flag = false;
    std::string text;
    std::vector<double> items;
};

struct Config {
    std::map<std::string, std::map<std::string, Value>> sections;

    bool has(const std::string& section, const std::string& key) const;
    double number(const std::string& section, const std::string& key, double fallback) const;
    double require_number(const std::string& section, const std::string& key) const;
    bool boolean(const std::string& section, const std::string& key, bool fallback) const;
    std::string text(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
    std::vector<double> array(const std::string& section, const std::string& key) const;
};

Config parse_config_text(const std::string& text);
Config parse_config_file(const std::string& path);

// Axis expansion for sweep grids.  Accepts one of
//   key       = [v1, v2, ...]      explicit list
//   key_lin   = [lo, hi, n]        n evenly spaced points
//   key_log   = [lo, hi, n]        n log-spaced points (lo, hi > 0)
// Returns empty when none of the three spellings is present; more than one
// spelling is a config_error.
std::vector<double> expand_axis(const Config& cfg, const std::string& section,
                                const std::string& key);

// Deterministic rendering of a parsed config for the JSON sidecar.
std::string render_config(const Config& cfg);

}  // namespace thermdec::runconfig
