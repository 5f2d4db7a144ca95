#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uinorm {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    NotPsd,
    SingularForNegativePower,
    BadK,
    BadP,
    BadDims,
    DimensionMismatch,
    ShapeMismatch,
    NotTracePreserving,
    NotDensity,
    DomainError,
    KindMismatch,
    BadParams,
    ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every precondition failure in the toolkit surfaces as this exception;
// kind() lets callers (the CLI in particular) map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace uinorm
