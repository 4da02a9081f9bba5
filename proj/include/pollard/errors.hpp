#pragma once

#include <stdexcept>
#include <string>

namespace pollard {

/// Failure categories raised by the solver and field evaluators.
enum class ErrorKind {
  domain,                   // argument outside its mathematical domain
  unstable_stratification,  // rho_plus <= rho0
  equatorial_branch,        // f == 0 passed to the mid-latitude solver
  regime,                   // derivative discriminant >= 0
  bracket,                  // no sign change after bracket expansion
  convergence,              // iteration cap reached
  amplitude,                // m^2 a^2 exp(-2 m s*) >= 1
  evanescent,               // k^2 c^2 <= f^2
  ordering,                 // beta0 <= P0 - P0_tilde
  inversion,                // label-map inversion did not converge
  singular,                 // vanishing Jacobian determinant
  consistency,              // a closed-form identity failed at runtime
};

const char* to_string(ErrorKind kind);

/// True for failures of an iterative method rather than of the inputs.
constexpr bool is_numeric(ErrorKind kind) {
  return kind == ErrorKind::bracket || kind == ErrorKind::convergence ||
         kind == ErrorKind::inversion || kind == ErrorKind::singular ||
         kind == ErrorKind::consistency;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pollard
