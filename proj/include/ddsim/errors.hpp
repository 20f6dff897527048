#pragma once

#include <stdexcept>
#include <string>

namespace ddsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or violated preconditions detected at call time.
struct ArgumentError : Error {
  using Error::Error;
};

// A unitary has an eigenphase too close to the log branch cut at -pi.
struct BranchCutError : Error {
  using Error::Error;
};

// Least-squares fit requested on a trajectory without usable signal.
struct DegenerateFitError : Error {
  using Error::Error;
};

// Rate of a zero-duration toggling segment requested.
struct DegenerateWindowError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line;
  int column;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace ddsim
