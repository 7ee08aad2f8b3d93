#ifndef CLOCUS_ERRORS_HPP
#define CLOCUS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clocus {

// Base class for all library errors. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands live in different fields or have incompatible shapes.
struct DimensionMismatchError : Error {
  using Error::Error;
};

// A value that must be invertible is not (singular matrix, zero divisor).
struct SingularityError : Error {
  using Error::Error;
};

// A camera matrix failed its rank precondition.
struct InvalidCameraError : Error {
  using Error::Error;
};

// Frame/profile bookkeeping failed in the Grassmann assembly.
struct ProfileMismatchError : Error {
  using Error::Error;
};

// No block-respecting row collection makes the C block invertible, or a
// sampled configuration violates a generality assumption beyond repair.
struct DegenerateSetupError : Error {
  using Error::Error;
};

// Hilbert-function values did not stabilize by the requested degree.
struct NeedsHigherDegreeError : Error {
  using Error::Error;
};

// A Jacobian was requested at a point not on the variety.
struct NotOnVarietyError : Error {
  using Error::Error;
};

// A converse construction exhausted its resampling budget.
struct ConstructionError : Error {
  using Error::Error;
};

// Scenario configuration is malformed.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace clocus

#endif  // CLOCUS_ERRORS_HPP
