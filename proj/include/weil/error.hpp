#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weil {

enum class ErrorKind {
    NotSquarefree,
    DivisionByZero,
    FieldMismatch,
    DimensionMismatch,
    NotCM,
    BasisNotFound,
    ClosureFailure,
    InvalidInput,
    PreconditionViolation,
    EmbeddingInconsistency,
    InconsistencyDetected,
    RankDefect,
    IllConditioned,
    ToleranceExceeded,
    NotAlternating,
    CombinatorialBlowup,
    SearchExhausted,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace weil
