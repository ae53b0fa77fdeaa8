#pragma once

#include <stdexcept>
#include <string>

namespace lmg {

// Thrown when a computation is well posed but the result would be meaningless
// or ambiguous (degenerate ground state, ground states from different symmetry
// sectors, no interior susceptibility peak in the bracket). The message carries
// the diagnostic numbers so callers can report them verbatim.
class RefusedError : public std::runtime_error {
 public:
  explicit RefusedError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when an iterative backend fails to reach the requested accuracy.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lmg
