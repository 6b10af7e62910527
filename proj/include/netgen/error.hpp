// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_ERROR_HPP
#define NETGEN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace netgen {

enum class ErrorCode {
  InvalidArgument,
  Io,
  Parse,
  Numeric,
  EgoTooSmall,
  Config,
};

/// Base class for every error raised by the library. The code is what the
/// C API reports; the message is kept for diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCode::Numeric, what) {}
};

/// Raised by ego subsampling when the parent network has fewer nodes than
/// requested; callers skip the ego rather than abort.
class EgoTooSmall : public Error {
 public:
  explicit EgoTooSmall(const std::string& what)
      : Error(ErrorCode::EgoTooSmall, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::Config, what) {}
};

}  // namespace netgen

#endif  // NETGEN_ERROR_HPP
