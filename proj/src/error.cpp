#include "tailassoc/error.hpp"

namespace tailassoc {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::TiesPresent: return "TiesPresent";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InvalidN: return "InvalidN";
    case ErrorKind::InvalidB: return "InvalidB";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::UnparsableValue: return "UnparsableValue";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::NonPositivePrice: return "NonPositivePrice";
    case ErrorKind::SeriesTooShort: return "SeriesTooShort";
    }
    return "Unknown";
}

} // namespace tailassoc
