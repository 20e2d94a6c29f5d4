#pragma once

#include <stdexcept>
#include <string>

namespace rmtdeco {

/// A matrix or Hilbert-space dimension is out of range or inconsistent.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the config reader; carries the offending line (1-based, 0 when
/// not tied to a line) and key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string field, const std::string& what)
        : std::runtime_error(format(line, field, what)), line_(line), field_(std::move(field)) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(int line, const std::string& field, const std::string& what) {
        std::string msg;
        if (line > 0) msg += "line " + std::to_string(line) + ": ";
        if (!field.empty()) msg += "field '" + field + "': ";
        return msg + what;
    }

    int line_;
    std::string field_;
};

}  // namespace rmtdeco
