#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schauder {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("parse error at offset " + std::to_string(offset) + ": " + what),
          offset_(offset), reason_(what) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t offset_;
    std::string reason_;
};

/// Evaluation hit a division by zero, sqrt of a negative number or another
/// non-finite intermediate. `subexpression` is the printed offending node.
class DomainError : public Error {
public:
    DomainError(std::string subexpression, const std::string& what)
        : Error(what + " in '" + subexpression + "'"),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }

private:
    std::string subexpression_;
};

/// Invalid problem or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: a linear solve did not converge, a flow blew up, a
/// contraction was lost.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace schauder
