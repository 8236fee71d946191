#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzchain {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression, definition or assignment text.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A variable has no membership bound to it, or a bound value is unusable.
class BindingError : public Error {
public:
    using Error::Error;
};

/// Reference to a system that is not in the registry, or a structurally invalid system.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Argument outside an operation's domain (zero power, bad composition, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace fuzzchain
