#pragma once

#include <stdexcept>
#include <string>

namespace cusp {

// Thrown when an operation would need to read coefficients beyond the
// known precision of a truncated series.
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an enumeration would exceed the configured element budget.
// carries the size estimate so callers can report it.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::string size_estimate)
        : std::runtime_error(what), estimate(std::move(size_estimate)) {}
    std::string estimate;
};

} // namespace cusp
