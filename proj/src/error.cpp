#include "flood/error.hpp"

namespace flood {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::argument: return "ARGUMENT";
    case ErrorKind::degeneracy: return "DEGENERACY";
    case ErrorKind::data: return "DATA";
    case ErrorKind::guard: return "GUARD";
    case ErrorKind::integrity: return "INTEGRITY";
    case ErrorKind::generation: return "GENERATION";
  }
  return "UNKNOWN";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace flood
