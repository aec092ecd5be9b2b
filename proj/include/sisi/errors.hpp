#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sisi {

// Every error the library raises derives from Error and carries the process
// exit code the command-line front end maps it to.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept = 0;
    virtual std::string_view kind() const noexcept = 0;
};

/// Malformed or out-of-range input (exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
    std::string_view kind() const noexcept override { return "config"; }
};

class ParseError : public ConfigError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class ValidationError : public ConfigError {
public:
    ValidationError(std::string field, const std::string& constraint)
        : ConfigError(field + ": " + constraint), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The request is well-formed but has no answer for these parameters,
/// e.g. asking for the endemic equilibrium when R0 <= 1 (exit code 3).
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
    std::string_view kind() const noexcept override { return "domain"; }
};

/// Numerical breakdown: singular systems, step-size underflow, failed
/// consistency checks (exit code 4).
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
    std::string_view kind() const noexcept override { return "numerical"; }
};

}  // namespace sisi
