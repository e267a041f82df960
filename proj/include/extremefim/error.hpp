#pragma once

#include <stdexcept>
#include <string>

namespace extremefim {

/// Failure categories shared by every module. The numeric values are mirrored
/// by the C API status codes in extremefim.h.
enum class ErrorCode {
    parameter_domain = 1,  // theta <= 0, K/L/N out of range
    shape = 2,             // ragged or empty input
    domain = 3,            // point outside the density's domain
    solver = 4,            // root bracketing failed
    numeric = 5,           // quadrature tolerance not achieved
    unsupported = 6,       // operation not available for this model
    degenerate_data = 7,   // likelihood has no interior maximum
    optimizer = 8,         // 1-D maximizer did not converge
    io = 9,
    undefined_bound = 10,  // CRLB of non-positive information
    parse = 11,            // malformed input file
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Quadrature that missed its tolerance. Carries what it did achieve.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double estimate, double error_bound)
        : Error(ErrorCode::numeric, what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace extremefim
