#pragma once

// Flat key-value run configuration: one `key = value` per line, `#` comments,
// dotted section keys. Physical parameters carry no defaults; numerical knobs
// do. Validation collects every problem before anything runs.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace eitmem::config {

struct ConfigError : std::runtime_error {
    std::vector<std::string> issues;
    explicit ConfigError(std::vector<std::string> list)
        : std::runtime_error(join(list)), issues(std::move(list)) {}

private:
    static std::string join(const std::vector<std::string>& list) {
        std::string msg = "invalid configuration:";
        for (const auto& e : list) msg += "\n  - " + e;
        return msg;
    }
};

inline std::string trim(std::string s) {
    const auto issp = [](unsigned char c) { return std::isspace(c); };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), issp));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), issp).base(), s.end());
    return s;
}

class KeyValueConfig {
public:
    static KeyValueConfig parse_string(const std::string& text) {
        KeyValueConfig cfg;
        std::stringstream in(text);
        std::string line;
        int lineno = 0;
        std::vector<std::string> issues;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                issues.push_back("line " + std::to_string(lineno) +
                                 ": expected 'key = value'");
                continue;
            }
            const std::string key = trim(stripped.substr(0, eq));
            const std::string value = trim(stripped.substr(eq + 1));
            if (key.empty())
                issues.push_back("line " + std::to_string(lineno) + ": empty key");
            else
                cfg.values_[key] = value;
        }
        if (!issues.empty()) throw ConfigError(std::move(issues));
        return cfg;
    }

    static KeyValueConfig parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError({"cannot read config file: " + path});
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_string(buf.str());
    }

    void set(const std::string& key, const std::string& value) {
        values_[trim(key)] = trim(value);
    }

    std::optional<std::string> raw(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Typed accessors that accumulate errors instead of failing fast.
class Reader {
public:
    explicit Reader(const KeyValueConfig& cfg) : cfg_(cfg) {}

    double require_number(const std::string& key) {
        const auto raw = cfg_.raw(key);
        if (!raw) {
            errors_.push_back("missing required key: " + key);
            return 0.0;
        }
        return to_number(key, *raw);
    }

    double number_or(const std::string& key, double fallback) {
        const auto raw = cfg_.raw(key);
        if (!raw) return fallback;
        return to_number(key, *raw);
    }

    long long integer_or(const std::string& key, long long fallback) {
        const double v = number_or(key, static_cast<double>(fallback));
        if (v != std::floor(v)) {
            errors_.push_back(key + ": expected an integer");
            return fallback;
        }
        return static_cast<long long>(v);
    }

    std::string require_string(const std::string& key) {
        const auto raw = cfg_.raw(key);
        if (!raw) {
            errors_.push_back("missing required key: " + key);
            return {};
        }
        return *raw;
    }

    std::string string_or(const std::string& key, const std::string& fallback) {
        return cfg_.raw(key).value_or(fallback);
    }

    bool flag_or(const std::string& key, bool fallback) {
        const auto raw = cfg_.raw(key);
        if (!raw) return fallback;
        if (*raw == "true" || *raw == "1" || *raw == "yes") return true;
        if (*raw == "false" || *raw == "0" || *raw == "no") return false;
        errors_.push_back(key + ": expected true/false, got '" + *raw + "'");
        return fallback;
    }

    std::vector<double> require_list(const std::string& key) {
        const auto raw = cfg_.raw(key);
        if (!raw) {
            errors_.push_back("missing required key: " + key);
            return {};
        }
        std::vector<double> out;
        std::stringstream ss(*raw);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            out.push_back(to_number(key, item));
        }
        if (out.empty()) errors_.push_back(key + ": expected a comma-separated list");
        return out;
    }

    void fail(const std::string& message) { errors_.push_back(message); }
    void merge(const std::vector<std::string>& issues) {
        errors_.insert(errors_.end(), issues.begin(), issues.end());
    }
    const std::vector<std::string>& errors() const { return errors_; }
    void throw_if_failed() const {
        if (!errors_.empty()) throw ConfigError(errors_);
    }

private:
    double to_number(const std::string& key, const std::string& text) {
        try {
            size_t pos = 0;
            const double v = std::stod(text, &pos);
            if (trim(text.substr(pos)).empty()) return v;
        } catch (const std::exception&) {
        }
        errors_.push_back(key + ": not a number: '" + text + "'");
        return 0.0;
    }

    const KeyValueConfig& cfg_;
    std::vector<std::string> errors_;
};

} // namespace eitmem::config
