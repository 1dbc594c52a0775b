#ifndef HDREMESH_ERRORS_HPP
#define HDREMESH_ERRORS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hdremesh {

// Categories are stable identifiers; the CLI prints them verbatim.
enum class ErrorCategory {
    invalid_argument,
    degeneracy,
    topology,
    geometry,
    search,
    transfer,
    diverged,
    io,
    config,
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

// Raised for collapsed or collinear elements; carries the element when known.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& message, std::optional<std::size_t> element = std::nullopt)
        : Error(ErrorCategory::degeneracy, message), element_(element) {}

    std::optional<std::size_t> element() const noexcept { return element_; }

private:
    std::optional<std::size_t> element_;
};

class TopologyError : public Error {
public:
    TopologyError(const std::string& message, std::optional<std::size_t> element = std::nullopt)
        : Error(ErrorCategory::topology, message), element_(element) {}

    std::optional<std::size_t> element() const noexcept { return element_; }

private:
    std::optional<std::size_t> element_;
};

class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& message) : Error(ErrorCategory::geometry, message) {}
};

class TransferError : public Error {
public:
    TransferError(const std::string& message, std::size_t node)
        : Error(ErrorCategory::transfer, message), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& message, double time, std::size_t node)
        : Error(ErrorCategory::diverged, message), time_(time), node_(node) {}

    double time() const noexcept { return time_; }
    std::size_t node() const noexcept { return node_; }

private:
    double time_;
    std::size_t node_;
};

class IoError : public Error {
public:
    IoError(const std::string& message, std::string path)
        : Error(ErrorCategory::io, message + ": " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error(ErrorCategory::config, message) {}
};

class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& message)
        : Error(ErrorCategory::invalid_argument, message) {}
};

} // namespace hdremesh

#endif
