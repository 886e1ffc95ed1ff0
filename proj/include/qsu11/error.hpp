#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qsu {

enum class ErrorKind {
    InvalidArgument,
    Divergent,
    PoleInC,
    PoleGuard,
    PathOutsideDomain,
    QuadratureUnderResolved,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (sweeps, the harness) can record the reason without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace qsu
