#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlh {

// Error taxonomy mirrored by the CLI exit codes:
//   config_error -> 1 (bad input / schema / unsupported combination)
//   guard_error  -> 2 (numerical precondition or hypothesis guard violated)
struct config_error : std::runtime_error {
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

struct guard_error : std::runtime_error {
    explicit guard_error(const std::string &msg) : std::runtime_error(msg) {}
};

constexpr double PI = 3.14159265358979323846;

// Distance from x to the nearest integer.
inline double integer_distance(double x) {
    return std::abs(x - std::round(x));
}

} // namespace nlh
