#pragma once

#include <stdexcept>
#include <string>

namespace trigdarboux {

enum class ErrorKind {
    InvalidInput,     // malformed or semantically invalid data
    Pole,             // evaluation hit a zero denominator
    DependentBasis,   // kernel basis is linearly dependent
    NotTrigonometric, // operation requires a trigonometric transform
    Inconsistent,     // an internal identity that must hold did not
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error(ErrorKind::Pole, what) {}
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    if (kind == ErrorKind::Pole) throw PoleError(what);
    throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::InvalidInput, what);
}

} // namespace trigdarboux
