#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lipfix {

enum class ErrorKind {
    InvalidArgument,
    SyntaxError,
    UnknownIdentifier,
    DomainError,
    DivideByZero,
    GridMismatch,
    DomainNotClosed,
    NotSolvable,
    GammaIsOne,
    ContractionViolated,
    NotAContraction,
    BudgetExceeded,
    NotSupNormContraction,
    UnknownCorpusEntry,
    IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `kind()` discriminates the failure;
/// `at()` carries the offending abscissa for evaluation errors and the
/// character offset for syntax errors.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::optional<double> at = std::nullopt)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), at_(at) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::optional<double> at() const noexcept { return at_; }

private:
    ErrorKind kind_;
    std::optional<double> at_;
};

}  // namespace lipfix
