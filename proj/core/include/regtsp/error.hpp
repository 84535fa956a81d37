#pragma once

#include <stdexcept>
#include <string>

namespace regtsp {

/// Coarse classification used by the CLI to pick an exit code.
enum class ErrorKind {
  /// Malformed input or parameter out of range (exit code 2).
  kInput,
  /// Structural precondition violated: not regular, disconnected (exit code 3).
  kPrecondition,
  /// An internal invariant failed; indicates a bug upstream.
  kInternal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace regtsp
