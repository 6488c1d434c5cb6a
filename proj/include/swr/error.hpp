#pragma once

#include <stdexcept>
#include <string>

namespace swr {

enum class ErrorCode {
  invalid_argument,
  parse,
  insufficient_data,
  numerical,
  io,
};

/// Base exception for the library. The code selects the C API status and
/// the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::invalid_argument, what);
}

}  // namespace swr
