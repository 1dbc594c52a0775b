#include "hdremesh/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "hdremesh/errors.hpp"

namespace hdremesh {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        parts.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view key) {
    T value{};
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw ConfigError("key '" + std::string(key) + "': cannot parse '" + std::string(text) +
                          "' as a number");
    }
    return value;
}

} // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(view.substr(0, eq)));
        const std::string value(trim(view.substr(eq + 1)));
        if (key.empty()) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": empty key");
        }
        if (!config.entries_.emplace(key, value).second) {
            throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" + key +
                              "'");
        }
    }
    return config;
}

Config Config::parse_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file", path.string());
    }
    return parse(in, path.string());
}

bool Config::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

void Config::set(const std::string& key, const std::string& value) { entries_[key] = value; }

std::string Config::get_string(std::string_view key, const std::string& fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
}

double Config::get_double(std::string_view key, double fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_number<double>(it->second, key);
}

long Config::get_int(std::string_view key, long fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_number<long>(it->second, key);
}

std::uint64_t Config::get_uint(std::string_view key, std::uint64_t fallback) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? fallback : parse_number<std::uint64_t>(it->second, key);
}

bool Config::get_bool(std::string_view key, bool fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return fallback;
    }
    if (it->second == "true" || it->second == "1") {
        return true;
    }
    if (it->second == "false" || it->second == "0") {
        return false;
    }
    throw ConfigError("key '" + std::string(key) + "': expected true or false");
}

std::vector<double> Config::get_doubles(std::string_view key,
                                        const std::vector<double>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return fallback;
    }
    std::vector<double> values;
    for (std::string_view part : split_list(it->second)) {
        values.push_back(parse_number<double>(part, key));
    }
    return values;
}

std::vector<long> Config::get_ints(std::string_view key, const std::vector<long>& fallback) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
        return fallback;
    }
    std::vector<long> values;
    for (std::string_view part : split_list(it->second)) {
        values.push_back(parse_number<long>(part, key));
    }
    return values;
}

void Config::require_known(std::initializer_list<std::string_view> known) const {
    for (const auto& [key, value] : entries_) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
}

} // namespace hdremesh
