#pragma once

#include <stdexcept>
#include <string>

namespace lubgap {

enum class ErrorCode {
    Ok = 0,
    Domain = 1,          // argument outside the mathematical domain
    OutOfRegion = 2,     // point outside the gap region
    Tolerance = 3,       // quadrature budget exhausted
    Hypothesis = 4,      // theorem hypothesis violated
    SignConvention = 5,  // sandwich bounds requested with the wrong signs
    Config = 6,
    Internal = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Carries the best estimate reached before the subdivision budget ran out.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double value, double error)
        : Error(ErrorCode::Tolerance, what), value_(value), error_(error) {}
    double value() const noexcept { return value_; }
    double error() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

}  // namespace lubgap
