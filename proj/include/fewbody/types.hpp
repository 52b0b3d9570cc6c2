// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fewbody {

using cplx = std::complex<double>;

enum class ErrorCode {
    InvalidBasis = 1,
    DegenerateBasis,
    NumericalFailure,
    IntegrationFailure,
    UnsupportedComplexEvaluation,
    OutOfRange,
    InvalidIndex,
    NoSolution,
    ShapeMismatch,
    InvalidSymmetry,
    NonCentralPotential,
    ParseError,
    ConfigError,
    IoError,
};

/// Base error for all library failures; carries a machine-readable code
/// so the C API can map exceptions onto integer error codes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct InvalidBasis : Error {
    explicit InvalidBasis(const std::string& m) : Error(ErrorCode::InvalidBasis, m) {}
};
struct DegenerateBasis : Error {
    explicit DegenerateBasis(const std::string& m) : Error(ErrorCode::DegenerateBasis, m) {}
};
struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string& m) : Error(ErrorCode::NumericalFailure, m) {}
};
struct IntegrationFailure : Error {
    explicit IntegrationFailure(const std::string& m) : Error(ErrorCode::IntegrationFailure, m) {}
};
struct UnsupportedComplexEvaluation : Error {
    explicit UnsupportedComplexEvaluation(const std::string& m)
        : Error(ErrorCode::UnsupportedComplexEvaluation, m) {}
};
struct OutOfRange : Error {
    explicit OutOfRange(const std::string& m) : Error(ErrorCode::OutOfRange, m) {}
};
struct InvalidIndex : Error {
    explicit InvalidIndex(const std::string& m) : Error(ErrorCode::InvalidIndex, m) {}
};
struct NoSolution : Error {
    explicit NoSolution(const std::string& m) : Error(ErrorCode::NoSolution, m) {}
};
struct ShapeMismatch : Error {
    explicit ShapeMismatch(const std::string& m) : Error(ErrorCode::ShapeMismatch, m) {}
};
struct InvalidSymmetry : Error {
    explicit InvalidSymmetry(const std::string& m) : Error(ErrorCode::InvalidSymmetry, m) {}
};
struct NonCentralPotential : Error {
    explicit NonCentralPotential(const std::string& m) : Error(ErrorCode::NonCentralPotential, m) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorCode::ParseError, m) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& m) : Error(ErrorCode::ConfigError, m) {}
};
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorCode::IoError, m) {}
};

} // namespace fewbody
