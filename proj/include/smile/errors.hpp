#pragma once

#include <stdexcept>
#include <string>

namespace smile {

// Root of every error raised by the library. Callers that only care about
// "the computation could not be carried out" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates the invariant of the type it is being stored in.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Likelihood row with no positive entry.
class DegenerateLikelihood : public Error {
 public:
  using Error::Error;
};

// KL(p||q) with p > 0 somewhere q = 0.
class InfiniteDivergence : public Error {
 public:
  using Error::Error;
};

// Log of a zero likelihood or a zero marginal.
class InfiniteSurprise : public Error {
 public:
  using Error::Error;
};

class DegeneratePosterior : public Error {
 public:
  using Error::Error;
};

// Geometric mixture with a zero normalizer.
class DegenerateUpdate : public Error {
 public:
  using Error::Error;
};

// Special function evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericalDegeneracy : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Bisection failed to meet its tolerance. Carries the final bracket.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double lo, double hi, double g_lo,
              double g_hi, int iterations)
      : Error(what),
        lo_(lo),
        hi_(hi),
        g_lo_(g_lo),
        g_hi_(g_hi),
        iterations_(iterations) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double residual_lo() const noexcept { return g_lo_; }
  double residual_hi() const noexcept { return g_hi_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double lo_;
  double hi_;
  double g_lo_;
  double g_hi_;
  int iterations_;
};

}  // namespace smile
