#include "pollard/geo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pollard/errors.hpp"

namespace pollard {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::unstable_stratification: return "unstable_stratification";
    case ErrorKind::equatorial_branch: return "equatorial_branch";
    case ErrorKind::regime: return "regime";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::amplitude: return "amplitude";
    case ErrorKind::evanescent: return "evanescent";
    case ErrorKind::ordering: return "ordering";
    case ErrorKind::inversion: return "inversion";
    case ErrorKind::singular: return "singular";
    case ErrorKind::consistency: return "consistency";
  }
  return "unknown";
}

void validate(const PhysicalConstants& constants) {
  if (!(constants.g > 0.0) || !(constants.omega > 0.0) ||
      !(constants.earth_radius > 0.0)) {
    throw Error(ErrorKind::domain,
                "physical constants g, omega and earth_radius must be positive");
  }
}

Site coriolis(const PhysicalConstants& constants, double phi) {
  validate(constants);
  if (!std::isfinite(phi) || std::abs(phi) >= std::numbers::pi / 2) {
    std::ostringstream msg;
    msg << "latitude " << phi << " rad is outside (-pi/2, pi/2)";
    throw Error(ErrorKind::domain, msg.str());
  }
  Site site;
  site.phi = phi;
  site.f = 2.0 * constants.omega * std::sin(phi);
  site.f_hat = 2.0 * constants.omega * std::cos(phi);
  return site;
}

Stratification reduced_gravity(const PhysicalConstants& constants, double rho0,
                               double rho_plus) {
  validate(constants);
  if (!(rho0 > 0.0) || !std::isfinite(rho0) || !std::isfinite(rho_plus)) {
    throw Error(ErrorKind::domain, "layer density rho0 must be positive and finite");
  }
  if (!(rho_plus > rho0)) {
    std::ostringstream msg;
    msg << "unstable stratification: rho_plus (" << rho_plus
        << ") must exceed rho0 (" << rho0 << ")";
    throw Error(ErrorKind::unstable_stratification, msg.str());
  }
  Stratification strat;
  strat.rho0 = rho0;
  strat.rho_plus = rho_plus;
  strat.g_tilde = constants.g * (rho_plus - rho0) / rho0;
  return strat;
}

double min_wavenumber(const PhysicalConstants& constants,
                      const Stratification& strat) {
  return 4.0 * constants.omega * constants.omega / strat.g_tilde;
}

Environment make_environment(const PhysicalConstants& constants, double phi,
                             double rho0, double rho_plus) {
  return Environment{constants, coriolis(constants, phi),
                     reduced_gravity(constants, rho0, rho_plus)};
}

}  // namespace pollard
