// SPDX-License-Identifier: Apache-2.0

#ifndef BWSTS_ERROR_HPP
#define BWSTS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bwsts {

/// Malformed arguments handed to a library operation (dimension mismatch,
/// unknown transition id, machine signature mismatch, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called on a machine outside its supported fragment,
/// e.g. the backward algorithm on a machine with zero tests.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Syntax or semantic error in a model file. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    enum class Kind { Syntax, Semantic };

    ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error(format(kind, line, column, what)),
          kind_(kind), line_(line), column_(column), message_(what) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    static std::string format(Kind kind, std::size_t line, std::size_t column,
                              const std::string& what) {
        return std::string(kind == Kind::Syntax ? "syntax error" : "semantic error") +
               " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what;
    }

    Kind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

/// Command-line level misuse: incompatible analysis for the machine kind,
/// missing target, missing bound clause.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bwsts

#endif  // BWSTS_ERROR_HPP
