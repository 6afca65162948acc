#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpb {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_double_17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string to_hex(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Flat key-value config with [section] headers; keys are addressed as
/// "section.key". Unknown keys are hard errors: every suite consumes the
/// keys it understands and then calls ensure_all_consumed(). Defaults used
/// through the getters are echoed into the effective map, whose canonical
/// serialization is hashed into every output file header.
class Config {
public:
    Config() = default;

    static Config parse_string(const std::string& text, const std::string& origin = "<memory>") {
        Config cfg;
        cfg.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        std::string section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string s = trim(line);
            if (s.empty() || s[0] == '#' || s[0] == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section");
                section = trim(s.substr(1, s.size() - 2));
                if (section.empty())
                    throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty section name");
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
            std::string key = trim(s.substr(0, eq));
            std::string value = trim(s.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
            const std::string full = section.empty() ? key : section + "." + key;
            if (cfg.values_.count(full))
                throw ConfigError(origin + ": duplicate key '" + full + "'");
            cfg.values_[full] = value;
        }
        return cfg;
    }

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_string(ss.str(), path);
    }

    static Config from_flat_map(const std::map<std::string, std::string>& kv) {
        Config cfg;
        cfg.origin_ = "<flat-map>";
        cfg.values_ = kv;
        return cfg;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& def) {
        if (!has(key)) {
            effective_[key] = def;
            return def;
        }
        consumed_.insert(key);
        effective_[key] = values_.at(key);
        return values_.at(key);
    }

    std::string require_string(const std::string& key) {
        if (!has(key)) throw ConfigError(origin_ + ": missing required key '" + key + "'");
        consumed_.insert(key);
        effective_[key] = values_.at(key);
        return values_.at(key);
    }

    double get_double(const std::string& key, double def) {
        if (!has(key)) {
            effective_[key] = format_double_17(def);
            return def;
        }
        return parse_double(key, consume(key));
    }

    /// Accepts the token "inf" (a0 = infinity is a first-class value).
    double get_double_or_inf(const std::string& key, double def) {
        if (!has(key)) {
            effective_[key] = std::isinf(def) ? "inf" : format_double_17(def);
            return def;
        }
        return parse_double(key, consume(key));
    }

    long long get_int(const std::string& key, long long def) {
        if (!has(key)) {
            effective_[key] = std::to_string(def);
            return def;
        }
        const std::string raw = consume(key);
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(raw, &pos);
            if (pos != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "': expected integer, got '" + raw + "'");
        }
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
        if (!has(key)) {
            effective_[key] = std::to_string(def);
            return def;
        }
        const std::string raw = consume(key);
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(raw, &pos, 0);
            if (pos != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "': expected unsigned integer, got '" +
                              raw + "'");
        }
    }

    bool get_bool(const std::string& key, bool def) {
        if (!has(key)) {
            effective_[key] = def ? "true" : "false";
            return def;
        }
        const std::string raw = consume(key);
        if (raw == "true" || raw == "1") return true;
        if (raw == "false" || raw == "0") return false;
        throw ConfigError(origin_ + ": key '" + key + "': expected true/false, got '" + raw + "'");
    }

    std::vector<double> get_double_list(const std::string& key, const std::vector<double>& def) {
        if (!has(key)) {
            effective_[key] = join(def);
            return def;
        }
        const std::string raw = consume(key);
        std::vector<double> out;
        std::string item;
        std::istringstream ss(raw);
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(parse_double_value(key, item));
        }
        if (out.empty()) throw ConfigError(origin_ + ": key '" + key + "': empty list");
        return out;
    }

    std::vector<int> get_int_list(const std::string& key, const std::vector<int>& def) {
        std::vector<double> d(def.begin(), def.end());
        const auto parsed = get_double_list(key, d);
        std::vector<int> out;
        for (double v : parsed) {
            if (v != std::floor(v))
                throw ConfigError(origin_ + ": key '" + key + "': expected integers");
            out.push_back(static_cast<int>(v));
        }
        return out;
    }

    /// Rejects any key the suite never consumed (silent typo protection).
    void ensure_all_consumed() const {
        std::vector<std::string> unknown;
        for (const auto& [k, v] : values_)
            if (!consumed_.count(k)) unknown.push_back(k);
        if (!unknown.empty()) {
            std::string msg = origin_ + ": unknown key(s):";
            for (const auto& k : unknown) msg += " '" + k + "'";
            throw ConfigError(msg);
        }
    }

    /// Canonical serialization of the effective (defaults-applied) config.
    std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : effective_) {
            out += k;
            out += "=";
            out += v;
            out += "\n";
        }
        return out;
    }

    std::uint64_t config_hash() const { return fnv1a64(canonical()); }

    const std::map<std::string, std::string>& effective() const { return effective_; }

    /// Inject a value programmatically (CLI overrides) before consumption.
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

private:
    static std::string trim(const std::string& s) {
        std::size_t a = 0, b = s.size();
        while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
        return s.substr(a, b - a);
    }
    static std::string join(const std::vector<double>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",";
            out += std::isinf(v[i]) ? "inf" : format_double_17(v[i]);
        }
        return out;
    }
    std::string consume(const std::string& key) {
        consumed_.insert(key);
        effective_[key] = values_.at(key);
        return values_.at(key);
    }
    double parse_double_value(const std::string& key, const std::string& raw) const {
        if (raw == "inf" || raw == "+inf") return std::numeric_limits<double>::infinity();
        try {
            std::size_t pos = 0;
            const double v = std::stod(raw, &pos);
            if (pos != raw.size()) throw std::invalid_argument(raw);
            return v;
        } catch (const std::exception&) {
            throw ConfigError(origin_ + ": key '" + key + "': expected number, got '" + raw + "'");
        }
    }
    double parse_double(const std::string& key, const std::string& raw) const {
        return parse_double_value(key, raw);
    }

    std::string origin_ = "<empty>";
    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> effective_;
    std::set<std::string> consumed_;
};

}  // namespace mpb
