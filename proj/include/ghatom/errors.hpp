#pragma once

#include <stdexcept>
#include <string>

namespace ghatom {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: parameter invariants violated.
struct ValidationError : Error {
  using Error::Error;
};

// Numerical failure inside an otherwise valid computation.
struct NumericalError : Error {
  using Error::Error;
};

// I/O failure (output files, config files).
struct IoError : Error {
  using Error::Error;
};

struct DegenerateFrame : NumericalError {
  using NumericalError::NumericalError;
};

struct SingularTransform : NumericalError {
  using NumericalError::NumericalError;
};

struct ChannelDegenerate : NumericalError {
  using NumericalError::NumericalError;
};

struct ResonanceSingular : NumericalError {
  using NumericalError::NumericalError;
};

struct IllConditioned : NumericalError {
  using NumericalError::NumericalError;
};

struct ZeroAmplitude : NumericalError {
  using NumericalError::NumericalError;
};

struct StencilCrossesResonance : NumericalError {
  using NumericalError::NumericalError;
};

struct PeakOnBoundary : NumericalError {
  using NumericalError::NumericalError;
};

struct MultiPeak : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace ghatom
