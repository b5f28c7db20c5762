#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trapcount {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (network, phenotype, perturbables, subspace, DIMACS).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(format(message, line, column)), line_(line), column_(column) {}
    explicit ParseError(const std::string& message) : Error(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
    }

    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

// A brute-force enumeration or expansion would exceed a configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// The SAT solver ran out of its conflict budget before deciding.
class BudgetExhausted : public Error {
public:
    using Error::Error;
};

}  // namespace trapcount
