#ifndef GRADIM_ERROR_HPP
#define GRADIM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradim {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Operands live in different ambient dimensions.
class DimensionMismatch : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// A configurable resource cap (element count, search nodes, combinations) was exceeded.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::size_t count, std::size_t limit)
        : Error(what + " (count " + std::to_string(count) + " exceeds limit " + std::to_string(limit) + ")"),
          count_(count),
          limit_(limit)
    {
    }

    std::size_t count() const noexcept { return count_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t count_;
    std::size_t limit_;
};

// Malformed textual input. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace gradim

#endif
