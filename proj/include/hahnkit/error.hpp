#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hahnkit {

using Index = std::int64_t;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index outside the 1-based domain (k = 0, negative, or beyond a cap).
class IndexError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: unknown names, bad JSON, invalid parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a rule expression, positioned by byte offset.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : InputError(message + " at offset " + std::to_string(offset)), message_(message), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }
  /// The message without the offset suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

/// Numerical evaluation failure (division by zero, non-finite value, unknown tail).
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& message) : Error(message) {}
  EvalError(const std::string& message, Index n, Index k)
      : Error(message + " (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")"),
        n_(n),
        k_(k) {}

  std::optional<Index> n() const noexcept { return n_; }
  std::optional<Index> k() const noexcept { return k_; }

 private:
  std::optional<Index> n_;
  std::optional<Index> k_;
};

}  // namespace hahnkit
