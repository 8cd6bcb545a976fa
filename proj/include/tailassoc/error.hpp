#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tailassoc {

enum class ErrorKind {
    LengthMismatch,
    NonFinite,
    TiesPresent,
    KOutOfRange,
    DomainError,
    QuadratureFailure,
    InvalidN,
    InvalidB,
    InvalidConfig,
    IoError,
    MissingColumn,
    UnparsableValue,
    EmptyIntersection,
    NonPositivePrice,
    SeriesTooShort,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` carries the category so
/// callers (the CLI in particular) can map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) throw Error(kind, what);
}

} // namespace tailassoc
