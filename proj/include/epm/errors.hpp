#pragma once

#include <stdexcept>
#include <string>

namespace epm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's precondition (negative thrust, pitch beyond cap, ...).
class DomainError : public Error {
  public:
    using Error::Error;
};

class QuadratureError : public Error {
  public:
    using Error::Error;
};

/// Reverse flow (u_pl <= 0) somewhere on the blade-element integration domain.
class OracleDomainError : public DomainError {
  public:
    using DomainError::DomainError;
};

class TrimInfeasibleError : public Error {
  public:
    using Error::Error;
};

/// The closed-form quartic hit a negative radicand or a degenerate resolvent.
class ClosedFormInapplicableError : public Error {
  public:
    using Error::Error;
};

class ShapeError : public Error {
  public:
    using Error::Error;
};

class SizeError : public Error {
  public:
    SizeError(const std::string &what, std::size_t limit) : Error(what), limit_(limit) {}
    [[nodiscard]] std::size_t limit() const noexcept { return limit_; }

  private:
    std::size_t limit_;
};

/// Problem reading a structured input file; carries the file path and 1-based line (0 if unknown).
class ConfigError : public Error {
  public:
    ConfigError(std::string path, int line, const std::string &message)
        : Error(format(path, line, message)), path_(std::move(path)), line_(line) {}

    [[nodiscard]] const std::string &path() const noexcept { return path_; }
    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    static std::string format(const std::string &path, int line, const std::string &message) {
        if (line > 0) {
            return path + ":" + std::to_string(line) + ": " + message;
        }
        return path + ": " + message;
    }

    std::string path_;
    int line_;
};

} // namespace epm
