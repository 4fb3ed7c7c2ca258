#pragma once

#include <stdexcept>
#include <string>

namespace fmq {

// Invalid argument outside a function's documented domain (CLI exit code 2).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

struct AlphaOutOfRange : DomainError {
    explicit AlphaOutOfRange(double alpha)
        : DomainError("alpha = " + std::to_string(alpha) + " outside valid range") {}
};

struct OutOfRange : DomainError {
    explicit OutOfRange(const std::string& msg) : DomainError(msg) {}
};

struct InsufficientData : DomainError {
    explicit InsufficientData(const std::string& msg) : DomainError(msg) {}
};

struct EmptyPath : DomainError {
    explicit EmptyPath(const std::string& msg) : DomainError(msg) {}
};

// Numerical failure: budget exhausted or accuracy unattainable (CLI exit code 3).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonConvergence : NumericalError {
    explicit NonConvergence(const std::string& msg) : NumericalError(msg) {}
};

struct GridTooCoarse : NumericalError {
    explicit GridTooCoarse(const std::string& msg) : NumericalError(msg) {}
};

struct TruncationTooSmall : NumericalError {
    explicit TruncationTooSmall(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace fmq
