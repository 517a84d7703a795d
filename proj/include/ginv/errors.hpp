#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ginv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not conform (e.g. a.cols != b.rows).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A mathematical precondition does not hold for the input
/// (group inverse of an index-2 matrix, HS decomposition of a zero matrix, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iteration failed to converge or a pivot vanished at the working tolerance.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class FileError : public Error {
public:
    using Error::Error;
};

/// Malformed matrix file. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(format(message, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        if (line == 0) return message;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

}  // namespace ginv
