#pragma once

#include <stdexcept>
#include <string>

namespace maslov {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A rank decision could not be made honestly: some singular value sits
/// within a factor of 10 of the threshold.  Callers should refine the
/// parameter or adjust the tolerance instead of trusting a silent rounding.
class BorderlineRankError : public Error {
public:
  BorderlineRankError(const std::string& what, double sigma, double threshold)
      : Error(what), sigma(sigma), threshold(threshold) {}
  double sigma;
  double threshold;
};

/// A crossing form turned out degenerate (n_zero > 0) after refinement.
class NonRegularCrossingError : public Error {
public:
  using Error::Error;
};

/// Crossing localization failed to resolve a parameter interval.
class LocalizationError : public Error {
public:
  using Error::Error;
};

/// A counting cutoff landed inside the guard band around an eigenvalue.
class CutoffOnEigenvalueError : public Error {
public:
  CutoffOnEigenvalueError(const std::string& what, double cutoff, double eigenvalue)
      : Error(what), cutoff(cutoff), eigenvalue(eigenvalue) {}
  double cutoff;
  double eigenvalue;
};

/// An eigenvalue branch lost simplicity during continuation.
class BranchCollisionError : public Error {
public:
  using Error::Error;
};

/// Spectral-flow phase bookkeeping could not separate the window point
/// e^{i(pi+eps)} from the spectrum after maximal refinement.
class PhaseSeparationError : public Error {
public:
  using Error::Error;
};

}  // namespace maslov
