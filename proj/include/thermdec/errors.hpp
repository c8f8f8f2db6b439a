#pragma once

#include <stdexcept>
#include <string>

namespace thermdec {

// Bad input: out-of-domain arguments, malformed config files, grids that
// violate documented constraints.  Maps to CLI exit code 2.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// A quadrature or series failed to reach the requested tolerance within its
// iteration cap.  Maps to CLI exit code 3.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace thermdec
