#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/rational.hpp>

namespace enlab {

/// Boltzmann constant, SI value (J/K, exact by the 2019 redefinition).
inline constexpr double kBoltzmannSi = 1.380649e-23;

/// Physical constants threaded through the thermodynamic quantities.
/// Defaults to natural units (k_B = 1) so informational and thermodynamic
/// figures live on the same scale; SI units are selectable per run.
struct PhysicalConstants {
  double k_b = 1.0;

  static PhysicalConstants natural() { return {1.0}; }
  static PhysicalConstants si() { return {kBoltzmannSi}; }
};

enum class LogBase { two, e };

/// Exact rational for microstate probabilities and significance weights.
/// Denominators in this library stay within 2^24 (enumeration bound) or the
/// sample count, so int64 never overflows.
using Rational = boost::rational<std::int64_t>;

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Raised when a trajectory hits a non-finite value; carries the step index.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what, std::int64_t step_index = -1)
      : std::runtime_error(what), step(step_index) {}
  std::int64_t step;
};

/// Raised when input data violates a structural invariant the pipeline is
/// required to surface (exit code 4 at the CLI boundary).
struct InvariantBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : ValidationError {
  explicit ParseError(const std::string& what, std::int64_t where = -1)
      : ValidationError(what), location(where) {}
  std::int64_t location;
};

namespace detail {
inline void check_constants(const PhysicalConstants& consts) {
  if (!(consts.k_b > 0.0)) {
    throw ValidationError("PhysicalConstants: k_B must be positive");
  }
}
}  // namespace detail

}  // namespace enlab
