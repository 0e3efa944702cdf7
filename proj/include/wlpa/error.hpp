#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wlpa {

enum class Errc {
  syntax,             // malformed .wg / JSON text
  duplicate_id,       // vertex or edge id declared twice
  unknown_vertex,     // an edge or query names an undeclared vertex
  unknown_edge,       // a query names an undeclared edge
  unknown_letter,     // a word contains a token that is not a letter
  bad_weight,         // weight < 1
  bad_special,        // special edge not of maximal weight at its source
  empty_graph,        // no vertices
  not_hereditary,     // subgraph requested on a non-hereditary set
  invalid_argument,   // structurally wrong argument (not a cycle, wrong dimension, ...)
  precondition,       // mathematical precondition of an operation does not hold
  limit_exceeded,     // a search cap was hit; never silently truncated
  internal,           // an internal consistency audit failed
};

std::string_view to_string(Errc code);

/// Exception type used across the library. The code decides the CLI exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for errors caused by malformed input rather than by the mathematics.
  bool is_input_error() const noexcept;

 private:
  Errc code_;
};

}  // namespace wlpa
