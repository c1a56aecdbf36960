#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace isospec {

enum class ErrorKind {
  schema,               // malformed or invariant-violating document/value
  io,                   // file could not be read or written
  grid,                 // grid mismatch or invalid grid
  integration_overflow, // non-finite state while shooting
  search_failure,       // eigenvalue bracketing/root polishing failed
  precondition,         // caller passed a value outside the operation's domain
  consistency,          // a numerical self-check failed
  admissibility,        // 1 + c_n a_n^0 <= 0
  coverage,             // spectrum table too short for the requested index
  domain,               // non-positive norming constant and similar
  solvability,          // singular Nystrom system
  hypothesis,           // theorem hypothesis does not hold for the inputs
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<int> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  /// Spectral index the error refers to, when there is one.
  std::optional<int> index() const noexcept { return index_; }
  /// Message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
  std::optional<int> index_;
};

/// Re-throws `e` with `stage` prepended to the message, keeping kind and index.
[[noreturn]] void rethrow_with_stage(const Error& e, std::string_view stage);

}  // namespace isospec
