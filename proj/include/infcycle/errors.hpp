#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace infcycle {

enum class ErrorKind { Input, Budget, Math };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Malformed input, unknown names, violated preconditions on user data.
class InputError : public Error {
public:
    explicit InputError(const std::string& what, std::optional<int> line = {}, std::optional<int> column = {})
        : Error(ErrorKind::Input, what), line_(line), column_(column) {}
    std::optional<int> line() const { return line_; }
    std::optional<int> column() const { return column_; }

private:
    std::optional<int> line_;
    std::optional<int> column_;
};

/// A configured size budget (bar-complex dimension, factorial growth) would be exceeded.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& what) : Error(ErrorKind::Budget, what) {}
};

/// A mathematical precondition or internal consistency check failed.
class MathError : public Error {
public:
    explicit MathError(const std::string& what) : Error(ErrorKind::Math, what) {}
};

}  // namespace infcycle
