#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatstrat {

enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    UnsupportedDegree,
    InvalidInput,
    DegenerateConfiguration,
    BadGluing,
    Disconnected,
    WrongStratum,
    NotInLattice,
    NotPrimitive,
    WedgeBoundViolated,
    NeedsHorizontalForm,
    NotSpecial,
    SearchExhausted,
    NotApplicable,
    BadDiagram,
    NotPeriodicWithinBudget,
    NotFoundWithinBound,
    NotSeparating,
    ReduciblePolynomial,
    NoQualifyingRoot,
    ParseError,
    Internal,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorKind::BadGluing: return "BadGluing";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::WrongStratum: return "WrongStratum";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::WedgeBoundViolated: return "WedgeBoundViolated";
    case ErrorKind::NeedsHorizontalForm: return "NeedsHorizontalForm";
    case ErrorKind::NotSpecial: return "NotSpecial";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::BadDiagram: return "BadDiagram";
    case ErrorKind::NotPeriodicWithinBudget: return "NotPeriodicWithinBudget";
    case ErrorKind::NotFoundWithinBound: return "NotFoundWithinBound";
    case ErrorKind::NotSeparating: return "NotSeparating";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::NoQualifyingRoot: return "NoQualifyingRoot";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

}  // namespace flatstrat
