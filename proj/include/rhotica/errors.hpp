#pragma once

#include <stdexcept>

namespace rhotica {

// Base class for everything this library throws on purpose.
// The CLI maps IoError to exit code 2 and every other Error to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text or bytes (CTM, WAV, JSON, CSV). Messages carry a
// line or field locus where one exists.
struct ParseError : Error {
  using Error::Error;
};

// Well-formed input that violates a documented invariant, or bad arguments.
struct ValidationError : Error {
  using Error::Error;
};

// Degenerate numeric input or a numerical procedure that failed to converge.
struct NumericError : Error {
  using Error::Error;
};

// Filesystem and subprocess failures.
struct IoError : Error {
  using Error::Error;
};

}  // namespace rhotica
