#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tra {

/// Base of every error raised by the kernel. `operation()` names the
/// operation that failed so front ends can report it.
class Error : public std::runtime_error {
public:
    Error(std::string operation, const std::string& message)
        : std::runtime_error(operation + ": " + message), operation_(std::move(operation)) {}

    const std::string& operation() const noexcept { return operation_; }

private:
    std::string operation_;
};

class UniverseRequired : public Error {
public:
    explicit UniverseRequired(const std::string& operation, const std::string& what)
        : Error(operation, "universe required to ground " + what) {}
};

class ArityMismatch : public Error {
public:
    ArityMismatch(const std::string& operation, std::size_t expected, std::size_t actual)
        : Error(operation, "arity mismatch: expected " + std::to_string(expected) + ", got " +
                               std::to_string(actual)) {}
};

class ResourceExceeded : public Error {
public:
    using Error::Error;
};

/// SLD search hit its depth bound with unexplored branches.
class Incomplete : public Error {
public:
    explicit Incomplete(std::size_t depth)
        : Error("where", "search incomplete: depth bound " + std::to_string(depth) +
                             " reached with unexplored branches"),
          depth_(depth) {}

    std::size_t depth() const noexcept { return depth_; }

private:
    std::size_t depth_;
};

class UnsupportedExpression : public Error {
public:
    using Error::Error;
};

class NonMonotone : public Error {
public:
    using Error::Error;
};

class TypeMismatch : public Error {
public:
    using Error::Error;
};

/// Unbound identifiers, undeclared relation variables and similar.
class EvalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, std::string found,
               std::vector<std::string> expected);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& found() const noexcept { return found_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string found_;
    std::vector<std::string> expected_;
};

} // namespace tra
