#include "thermdec/runconfig.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "thermdec/errors.hpp"
#include "thermdec/report.hpp"

namespace thermdec::runconfig {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw config_error("config line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& tok, int line) {
    const std::string t = trim(tok);
    if (t.empty()) fail(line, "empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) fail(line, "bad number '" + t + "'");
    if (!std::isfinite(v)) fail(line, "non-finite number '" + t + "'");
    return v;
}

Value parse_value(const std::string& raw, int line) {
    const std::string t = trim(raw);
    Value v;
    if (t.empty()) fail(line, "missing value");
    if (t == "true" || t == "false") {
        v.kind = Value::Kind::boolean;
        v.flag = (t == "true");
        return v;
    }
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') fail(line, "unterminated string");
        v.kind = Value::Kind::string;
        v.text = t.substr(1, t.size() - 2);
        return v;
    }
    if (t.front() == '[') {
        if (t.back() != ']') fail(line, "unterminated array");
        v.kind = Value::Kind::array;
        const std::string body = t.substr(1, t.size() - 2);
        std::string item;
        std::stringstream ss(body);
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty() && v.items.empty() && ss.eof()) break;  // []
            v.items.push_back(parse_number(item, line));
        }
        return v;
    }
    v.kind = Value::Kind::number;
    v.num = parse_number(t, line);
    return v;
}

std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

const Value* find(const Config& c, const std::string& sec, const std::string& key) {
    const auto s = c.sections.find(sec);
    if (s == c.sections.end()) return nullptr;
    const auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
}

}  // namespace

bool Config::has(const std::string& section, const std::string& key) const {
    return find(*this, section, key) != nullptr;
}

double Config::number(const std::string& section, const std::string& key,
                      double fallback) const {
    const Value* v = find(*this, section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::number)
        throw config_error(section + "." + key + " must be a number");
    return v->num;
}

double Config::require_number(const std::string& section, const std::string& key) const {
    const Value* v = find(*this, section, key);
    if (!v) throw config_error("missing required key " + section + "." + key);
    if (v->kind != Value::Kind::number)
        throw config_error(section + "." + key + " must be a number");
    return v->num;
}

bool Config::boolean(const std::string& section, const std::string& key,
                     bool fallback) const {
    const Value* v = find(*this, section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::boolean)
        throw config_error(section + "." + key + " must be true or false");
    return v->flag;
}

std::string Config::text(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    const Value* v = find(*this, section, key);
    if (!v) return fallback;
    if (v->kind != Value::Kind::string)
        throw config_error(section + "." + key + " must be a quoted string");
    return v->text;
}

std::vector<double> Config::array(const std::string& section, const std::string& key) const {
    const Value* v = find(*this, section, key);
    if (!v) return {};
    if (v->kind == Value::Kind::array) return v->items;
    if (v->kind == Value::Kind::number) return {v->num};  // scalar as 1-point list
    throw config_error(section + "." + key + " must be an array or a number");
}

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::string current;
    std::stringstream ss(text);
    std::string raw;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const std::string s = trim(strip_comment(raw));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            current = trim(s.substr(1, s.size() - 2));
            if (current.empty()) fail(line, "empty section name");
            cfg.sections[current];  // sections may be empty
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        if (key.empty()) fail(line, "empty key");
        if (current.empty()) fail(line, "key outside any [section]");
        if (cfg.sections[current].count(key)) fail(line, "duplicate key '" + key + "'");
        cfg.sections[current][key] = parse_value(s.substr(eq + 1), line);
    }
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<double> expand_axis(const Config& cfg, const std::string& section,
                                const std::string& key) {
    const bool plain = cfg.has(section, key);
    const bool lin = cfg.has(section, key + "_lin");
    const bool log = cfg.has(section, key + "_log");
    if (int(plain) + int(lin) + int(log) > 1)
        throw config_error(section + "." + key + ": give only one of the list, _lin, _log forms");
    if (plain) return cfg.array(section, key);
    const std::string suffix = lin ? "_lin" : "_log";
    if (!lin && !log) return {};
    const auto spec = cfg.array(section, key + suffix);
    if (spec.size() != 3)
        throw config_error(section + "." + key + suffix + " must be [lo, hi, n]");
    const double lo = spec[0], hi = spec[1];
    const long n = std::lround(spec[2]);
    if (n < 1 || n > 1000000 || double(n) != spec[2])
        throw config_error(section + "." + key + suffix + ": n must be a positive integer");
    if (log && (!(lo > 0.0) || !(hi > 0.0)))
        throw config_error(section + "." + key + "_log: bounds must be positive");
    std::vector<double> axis(static_cast<std::size_t>(n));
    if (n == 1) {
        axis[0] = lo;
        return axis;
    }
    for (long i = 0; i < n; ++i) {
        const double t = double(i) / double(n - 1);
        axis[std::size_t(i)] = lin ? lo + (hi - lo) * t
                                   : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
    }
    return axis;
}

std::string render_config(const Config& cfg) {
    std::string out;
    for (const auto& [sec, keys] : cfg.sections) {
        for (const auto& [key, v] : keys) {
            out += sec + "." + key + " = ";
            switch (v.kind) {
                case Value::Kind::number: out += report::fmt17(v.num); break;
                case Value::Kind::boolean: out += v.flag ? "true" : "false"; break;
                case Value::Kind::string: out += "\"" + v.text + "\""; break;
                case Value::Kind::array: {
                    out += "[";
                    for (std::size_t i = 0; i < v.items.size(); ++i) {
                        if (i) out += ", ";
                        out += report::fmt17(v.items[i]);
                    }
                    out += "]";
                    break;
                }
            }
            out += "\n";
        }
    }
    return out;
}

}  // namespace thermdec::runconfig
