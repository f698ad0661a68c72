#pragma once

#include <stdexcept>

namespace bloch {

/// Selects the OpenMP kernel or the sequential reference path. Both produce
/// identical results for identical inputs; the serial path exists so tests
/// and benchmarks can compare against it.
enum class Execution { serial, parallel };

/// A computation that should have succeeded on valid input did not
/// (non-convergence, verification mismatch, exhausted budget).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bloch
