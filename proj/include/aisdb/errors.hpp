#pragma once

#include <stdexcept>
#include <string>

namespace aisdb {

/// Base of every error thrown by the library. The CLI maps each subclass
/// onto a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input file does not follow the expected column schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value or malformed config file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Not enough data for the requested window sizes.
class SizingError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input whose content is inconsistent (e.g. MMSI mismatch).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace aisdb
