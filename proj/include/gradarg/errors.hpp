#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gradarg {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed framework text. Line and column are 1-based.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class unknown_argument : public error {
public:
  explicit unknown_argument(const std::string& name) : error("unknown argument '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

/// Raised when a computation cannot produce a trustworthy answer
/// (fixpoint did not converge, enumeration bound exceeded, ...).
class computation_error : public error {
public:
  using error::error;
};

/// A graph edit that cannot be applied as a single simple edit.
class edit_error : public error {
public:
  using error::error;
};

}  // namespace gradarg
