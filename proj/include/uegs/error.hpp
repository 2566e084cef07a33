#ifndef UEGS_ERROR_HPP
#define UEGS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace uegs {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrorKind {
    degenerate_input = 2,  // singular/supersingular curve, j in {0,1728}, ...
    unsupported = 3,       // not Atkin, r too small, missing capability
    precision = 4,         // verification or precision failure
    missing_artifact = 5,  // file not found / version mismatch
    internal = 1,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string reason)
        : std::runtime_error(reason), kind_(kind), reason_(std::move(reason)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& reason() const { return reason_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
    std::string reason_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& reason) {
    throw Error(kind, reason);
}

}  // namespace uegs

#endif
