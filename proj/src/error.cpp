#include "lipfix/error.hpp"

namespace lipfix {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::DivideByZero: return "DivideByZero";
        case ErrorKind::GridMismatch: return "GridMismatch";
        case ErrorKind::DomainNotClosed: return "DomainNotClosed";
        case ErrorKind::NotSolvable: return "NotSolvable";
        case ErrorKind::GammaIsOne: return "GammaIsOne";
        case ErrorKind::ContractionViolated: return "ContractionViolated";
        case ErrorKind::NotAContraction: return "NotAContraction";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::NotSupNormContraction: return "NotSupNormContraction";
        case ErrorKind::UnknownCorpusEntry: return "UnknownCorpusEntry";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace lipfix
