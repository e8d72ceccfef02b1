#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace interp {

using Complex = std::complex<double>;

/// Coefficient vector of a truncated sequence space.
using CVector = std::vector<Complex>;

/// Vector lengths disagree (space dimension, map constants, sample sizes).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (θ ∉ (0,1), t < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline void require_same_dim(std::size_t expected, std::size_t actual, const char* what)
{
    if (expected != actual) {
        throw DimensionError(std::string(what) + ": dimension mismatch (expected " +
                             std::to_string(expected) + ", got " + std::to_string(actual) + ")");
    }
}

inline void require_open_unit(double theta, const char* what)
{
    if (!(theta > 0.0 && theta < 1.0)) {
        throw DomainError(std::string(what) + ": theta must lie in (0,1), got " + std::to_string(theta));
    }
}

} // namespace interp
