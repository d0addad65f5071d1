#pragma once

#include <stdexcept>
#include <string>

namespace qgt {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The two bands touch at the requested (m, k); eigenvectors and overlap
// coefficients are undefined there.
struct GapClosed : Error {
  using Error::Error;
};

// Sign classification requested for a protocol whose signs are undefined
// (initial dimerization exactly at the critical value, or no quench at all).
struct AtCriticalPoint : Error {
  using Error::Error;
};

// A finite-difference stencil would cross or touch a gap-closing point.
struct DegenerateStencil : Error {
  using Error::Error;
};

// Finite-difference step outside the supported range.
struct StepTooLarge : Error {
  using Error::Error;
};

// Malformed configuration (grid sizes, component lists, parameter ranges).
struct ConfigInvalid : Error {
  using Error::Error;
};

// Every momentum node of a scan grid was excluded as degenerate.
struct DegenerateGrid : Error {
  using Error::Error;
};

// Filesystem write/read failed.
struct IoFailure : Error {
  using Error::Error;
};

}  // namespace qgt
