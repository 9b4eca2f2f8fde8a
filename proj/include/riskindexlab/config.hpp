#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "riskindexlab/errors.hpp"

namespace riskindexlab {

/// Flat `key = value` settings, sorted by key.
using ConfigMap = std::map<std::string, std::string>;

namespace detail {

inline std::string trimmed(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

// `#` starts a comment; blank lines are ignored; a repeated key is an error.
inline ConfigMap parse_config(std::istream& in, const std::string& source = "<config>") {
    ConfigMap out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = detail::trimmed(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw InputError(source + ":" + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key = detail::trimmed(std::string_view(body).substr(0, eq));
        std::string value = detail::trimmed(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw InputError(source + ":" + std::to_string(line_no) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (!out.emplace(key, value).second) {
            throw InputError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

inline ConfigMap load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

inline std::string serialize_config(const ConfigMap& cfg) {
    std::ostringstream os;
    for (const auto& [k, v] : cfg) os << k << " = " << v << '\n';
    return os.str();
}

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Explicit flag, else the RISKINDEXLAB_SEED value, else kDefaultSeed.
inline std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value) {
    if (flag) return *flag;
    if (env_value && *env_value) {
        std::uint64_t v = 0;
        const std::string_view s(env_value);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw InputError("RISKINDEXLAB_SEED must be an unsigned integer, got '" +
                             std::string(s) + "'");
        }
        return v;
    }
    return kDefaultSeed;
}

// FNV-1a, used to fingerprint the effective configuration in artifacts.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace riskindexlab
