#pragma once

#include <stdexcept>
#include <string>

namespace salience {

// Exit codes surfaced by the command-line tool.
enum class ErrorKind { Config = 2, Data = 3, Numeric = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Bad flags, missing prerequisite artifacts, inconsistent run settings.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

/// Malformed or invalid input data (documents, lexicons, model files).
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

/// Training or numeric failures (singular scatter, no positives, empty topic).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

// Warnings go to stderr unless silenced; library code never aborts on them.
void warn(const std::string& message);
void set_warnings_enabled(bool enabled);

}  // namespace salience
