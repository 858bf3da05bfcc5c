#pragma once

#include <stdexcept>
#include <string>

namespace ccs {

enum class ErrorKind {
    Infeasible,            // no radius admits a combined solution
    TooFewClients,         // |C| < L, pass-up cannot open a center
    NoFacilitySurvives,    // preprocessing deleted every facility
    CoverageShortfall,     // p exceeds achievable coverage at this guess
    MatchingDeficient,     // relocation matching cannot saturate F / reach p
    ExtractionInfeasible,  // flow cannot meet lower bounds or the p target
    TooLarge,              // instance exceeds the oracle guard
    SumMismatch,           // transfer vectors with different total mass
    InvalidArgument,
};

class SolveError : public std::runtime_error {
public:
    SolveError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Infeasible: return "infeasible";
        case ErrorKind::TooFewClients: return "too-few-clients";
        case ErrorKind::NoFacilitySurvives: return "no-facility-survives";
        case ErrorKind::CoverageShortfall: return "coverage-shortfall";
        case ErrorKind::MatchingDeficient: return "matching-deficient";
        case ErrorKind::ExtractionInfeasible: return "extraction-infeasible";
        case ErrorKind::TooLarge: return "too-large";
        case ErrorKind::SumMismatch: return "sum-mismatch";
        case ErrorKind::InvalidArgument: return "invalid-argument";
    }
    return "unknown";
}

}  // namespace ccs
