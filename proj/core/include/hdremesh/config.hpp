#ifndef HDREMESH_CONFIG_HPP
#define HDREMESH_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hdremesh {

// Plain-text settings, one `key = value` per line. Lists are comma separated;
// `#` starts a comment. Keys are case-sensitive and may appear only once.
class Config {
public:
    Config() = default;

    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config parse_string(std::string_view text);
    static Config load(const std::filesystem::path& path);

    bool contains(std::string_view key) const;
    void set(const std::string& key, const std::string& value);

    std::string get_string(std::string_view key, const std::string& fallback) const;
    double get_double(std::string_view key, double fallback) const;
    long get_int(std::string_view key, long fallback) const;
    std::uint64_t get_uint(std::string_view key, std::uint64_t fallback) const;
    bool get_bool(std::string_view key, bool fallback) const;
    std::vector<double> get_doubles(std::string_view key, const std::vector<double>& fallback) const;
    std::vector<long> get_ints(std::string_view key, const std::vector<long>& fallback) const;

    // Throws ConfigError naming the first key outside `known`.
    void require_known(std::initializer_list<std::string_view> known) const;

    const std::map<std::string, std::string, std::less<>>& entries() const noexcept {
        return entries_;
    }

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

} // namespace hdremesh

#endif
