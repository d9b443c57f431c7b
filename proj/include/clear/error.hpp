#pragma once

#include <stdexcept>
#include <string>

namespace clear {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorKind { config, data, unreachable };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Invalid parameters or options (bad window size, unknown generator, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

/// Malformed or inconsistent input data (shape mismatch, unknown class id, ...).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

}  // namespace clear
