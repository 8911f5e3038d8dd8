#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

// Syntax or reference error in a graph file or element expression.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error(what), line(line), column(column) {}
};

// Raised by desingularize() and everything downstream of it: a graph with an
// uncountable emitter has no desingularization.
struct UncountableEmitterError : std::runtime_error {
  std::string vertex;
  explicit UncountableEmitterError(std::string v)
      : std::runtime_error("vertex '" + v +
                           "' is an uncountable emitter; the graph does not "
                           "admit a desingularization"),
        vertex(std::move(v)) {}
};

// Mixing elements over different graphs or different coefficient fields.
struct AmbientMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A verification routine was handed invalid input (bad witness, bad
// decomposition, carrier too large).
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace lpa
