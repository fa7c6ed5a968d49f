#pragma once

#include <stdexcept>
#include <string>

namespace zoneforge {

// Bad user input: malformed config, invalid flags, transform validation failures.
// The CLI maps this family to exit code 2.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Failure inside the numerical machinery (integrator breakdown, lost bracket).
// The CLI maps this to exit code 3.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zoneforge
