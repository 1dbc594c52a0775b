#ifndef HDREMESH_CSV_HPP
#define HDREMESH_CSV_HPP

#include <charconv>
#include <string>

namespace hdremesh {

// Shortest round-trip decimal form; identical output for identical doubles.
inline std::string format_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

} // namespace hdremesh

#endif
