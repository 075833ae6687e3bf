#pragma once

#include <stdexcept>
#include <string>

namespace wattprint {

// Malformed or inconsistent input: bad trace lines, unknown preset names,
// empty selections.  The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& message) : std::runtime_error(message) {}
};

// The host cannot satisfy the request: missing energy counters, absent GPU
// management tool.  The CLI maps these to exit code 2.
class EnvError : public std::runtime_error {
public:
    explicit EnvError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace wattprint
