#pragma once

#include <stdexcept>
#include <string>

namespace lossblockade {

/// Bad input: negative truncation, mismatched bases, nonpositive physical constants.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An eigensolver, linear solve or integrator did not produce a usable result.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Liouvillian null space is not one-dimensional.
class DegenerateSteadyState : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

/// Requested problem exceeds the configured dense-size cap.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form denominator vanishes at this parameter point.
class SingularParameter : public std::runtime_error {
 public:
  SingularParameter(const std::string& factor, const std::string& what)
      : std::runtime_error(what), factor_(factor) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

/// g2/g3 requested for a state with (numerically) no photons.
class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A search did not find what it was asked for inside the given range.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lossblockade
