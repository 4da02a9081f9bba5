#pragma once

/**
 * @file geo.hpp
 * @brief Physical constants, f-plane site description and two-layer
 * stratification.
 *
 * All quantities are SI. Latitudes are radians here; degree input is
 * converted at the command-line boundary.
 */

namespace pollard {

struct PhysicalConstants {
  double g = 9.81;              ///< gravitational acceleration [m s^-2]
  double omega = 7.29e-5;       ///< Earth rotation rate [rad s^-1]
  double earth_radius = 6.371e6;  ///< [m]
};

/// Throws ErrorKind::domain unless every constant is strictly positive.
void validate(const PhysicalConstants& constants);

/// f-plane site. f = 2 Omega sin(phi), f_hat = 2 Omega cos(phi).
struct Site {
  double phi = 0.0;    ///< latitude [rad], positive north
  double f = 0.0;      ///< Coriolis parameter [s^-1]
  double f_hat = 0.0;  ///< reciprocal Coriolis parameter [s^-1]
};

/// Two constant-density layers separated by the thermocline.
struct Stratification {
  double rho0 = 0.0;      ///< density above the thermocline [kg m^-3]
  double rho_plus = 0.0;  ///< density below the thermocline [kg m^-3]
  double g_tilde = 0.0;   ///< reduced gravity g (rho_plus - rho0) / rho0 [m s^-2]
};

/// Builds the site at latitude @p phi. Requires |phi| < pi/2.
Site coriolis(const PhysicalConstants& constants, double phi);

/**
 * @brief Reduced gravity of a stable two-layer column.
 *
 * g_tilde = g (rho_plus - rho0) / rho0, always positive. Throws
 * ErrorKind::unstable_stratification when rho_plus <= rho0 and
 * ErrorKind::domain when rho0 <= 0.
 */
Stratification reduced_gravity(const PhysicalConstants& constants, double rho0,
                               double rho_plus);

/// 4 Omega^2 / g_tilde. Admissible wavenumbers are strictly above it.
double min_wavenumber(const PhysicalConstants& constants,
                      const Stratification& strat);

/// Site, stratification and the constants they were built from.
struct Environment {
  PhysicalConstants constants;
  Site site;
  Stratification strat;
};

Environment make_environment(const PhysicalConstants& constants, double phi,
                             double rho0, double rho_plus);

}  // namespace pollard
