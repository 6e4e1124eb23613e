#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace odyn {

// Coarse error categories so the CLI can map failures to exit codes and a
// single-line diagnostic.
enum class ErrorCode {
  InvalidArgument,
  CapExceeded,
  ParseError,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace odyn
