#pragma once

#include <stdexcept>
#include <string>

namespace twobase {

enum class ErrorKind {
    Internal,
    LimitExceeded,
    Overflow,
    OutOfRange,
    BadArgument,
    NotABase,
    ParseError,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace twobase
