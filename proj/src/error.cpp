#include "wlpa/error.hpp"

namespace wlpa {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::syntax: return "syntax";
    case Errc::duplicate_id: return "duplicate-id";
    case Errc::unknown_vertex: return "unknown-vertex";
    case Errc::unknown_edge: return "unknown-edge";
    case Errc::unknown_letter: return "unknown-letter";
    case Errc::bad_weight: return "bad-weight";
    case Errc::bad_special: return "bad-special";
    case Errc::empty_graph: return "empty-graph";
    case Errc::not_hereditary: return "not-hereditary";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::precondition: return "precondition";
    case Errc::limit_exceeded: return "limit-exceeded";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case Errc::precondition:
    case Errc::limit_exceeded:
    case Errc::internal:
      return false;
    default:
      return true;
  }
}

}  // namespace wlpa
