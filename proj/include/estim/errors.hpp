#pragma once

#include <stdexcept>
#include <string>

namespace estim {

/// Raised when a forward or adjoint solve leaves the finite range or exceeds
/// the overflow bound.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the strong Wolfe search when no admissible step is found.
class LineSearchError : public std::runtime_error {
 public:
  explicit LineSearchError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration parse or validation failure. `key()` names the offending key
/// when known; `line()`/`column()` are 1-based positions for parse errors and
/// zero otherwise.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string key = {}, int line = 0, int column = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line), column_(column) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  std::string key_;
  int line_;
  int column_;
};

}  // namespace estim
