#pragma once

#include <stdexcept>
#include <string>

namespace old {

// Error taxonomy mirrors the CLI exit codes: validation/parse -> 1,
// I/O -> 2, numerical non-convergence -> 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : Error {
  using Error::Error;
};

// Malformed input data; message carries the location (file/line) when known.
struct ParseError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double last_residual)
      : Error(what), residual(last_residual) {}
  double residual;
};

}  // namespace old
