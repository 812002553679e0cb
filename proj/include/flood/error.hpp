#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flood {

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorKind {
  argument,    ///< precondition on a call argument violated
  degeneracy,  ///< input geometry admits no full-dimensional triangulation
  data,        ///< malformed or unreadable input data
  guard,       ///< an explicit size guard refused the request
  integrity,   ///< an internal contract was broken (a bug, not bad input)
  generation,  ///< a randomized generator could not satisfy its constraints
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::argument, message);
}

}  // namespace flood
