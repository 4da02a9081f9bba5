#pragma once

/**
 * @file dispersion.hpp
 * @brief Dispersion relation of the rotating internal wave and the dependent
 * parameter set of the Lagrangian solution.
 *
 * With X = c sqrt(k / g_tilde), eps = f / sqrt(g_tilde k) and F = f_hat / f
 * the relation c^2 (c^2 k^2 - f^2) = (c f_hat + g_tilde)^2 becomes
 *
 *     P(X) = X^4 - eps^2 (1 + F^2) X^2 - 2 F eps X - 1 = 0.
 *
 * Off the Equator P has exactly one positive root in (1, 1 + eps F) and one
 * negative root in (-1, -1 + eps F) whenever the discriminant of P' is
 * negative. The roots are isolated on those brackets and refined by
 * bisection followed by a safeguarded Newton polish.
 */

#include <array>
#include <string_view>
#include <vector>

#include "pollard/geo.hpp"

namespace pollard {

/// Quartic P(X) in non-dimensional form.
struct NondimDispersion {
  double epsilon = 0.0;  ///< f / sqrt(g_tilde k)
  double F = 0.0;        ///< f_hat / f
  /// Coefficients of X^4, X^3, X^2, X^1, X^0.
  std::array<double, 5> coeffs{};

  /// Builds the quartic directly from its two ratios.
  static NondimDispersion from_ratios(double epsilon, double F);

  double operator()(double x) const;
  double derivative(double x) const;

  /// Discriminant of P'(X): 128 eps^6 (1+F^2)^3 - 1728 F^2 eps^2.
  double derivative_discriminant() const;

  /// eps F = f_hat / sqrt(g_tilde k), positive on both hemispheres.
  double bracket_width() const { return epsilon * F; }
};

/// Requires k > 4 Omega^2 / g_tilde and f != 0 (equatorial_branch otherwise).
NondimDispersion nondimensionalize(const Site& site, const Stratification& strat,
                                   double k);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct RootBrackets {
  Bracket positive;
  Bracket negative;
  int expansions = 0;  ///< geometric expansions needed to confirm the sign change
};

/// Verified sign-change brackets around both real roots. Throws
/// ErrorKind::regime when the derivative discriminant is not negative and
/// ErrorKind::bracket when ten expansions do not produce a sign change.
RootBrackets root_brackets(const NondimDispersion& nd);

struct QuarticRoots {
  double x_plus = 0.0;
  double x_minus = 0.0;
};

inline constexpr double default_root_tolerance = 1e-12;

/// Both real roots with |P(X)| <= tol * max(1, X^4).
QuarticRoots solve_quartic(const NondimDispersion& nd,
                           double tol = default_root_tolerance);

/// Real roots of P by Ferrari's resolvent cubic. Cross-check only.
std::vector<double> ferrari_real_roots(const NondimDispersion& nd);

struct DispersionRoots {
  double x_plus = 0.0;
  double x_minus = 0.0;
  double c_plus = 0.0;   ///< eastward phase speed [m s^-1]
  double c_minus = 0.0;  ///< westward phase speed [m s^-1]
};

/// Mid-latitude phase speeds. Also checks the dimensional relation
/// rho0^2 c^2 (c^2 k^2 - f^2) = (rho0 c f_hat + g (rho_plus - rho0))^2.
DispersionRoots solve_dispersion(const NondimDispersion& nd, const Environment& env,
                                 double k, double tol = default_root_tolerance);

struct EquatorialSpeeds {
  double c_plus = 0.0;
  double c_minus = 0.0;
};

/// Roots of k c^2 - 2 Omega c - g_tilde = 0: c = (Omega +- sqrt(Omega^2 + k g_tilde)) / k.
EquatorialSpeeds solve_equatorial(const PhysicalConstants& constants,
                                  const Stratification& strat, double k);

enum class Branch { positive, negative, equatorial };

std::string_view to_string(Branch branch);
Branch parse_branch(std::string_view text);

/// Selects the phase speed of the requested mode. On the Equator (f == 0)
/// the positive and negative branches resolve to the closed-form roots;
/// Branch::equatorial is only accepted there.
double select_phase_speed(const Environment& env, double k, Branch branch,
                          double tol = default_root_tolerance);

inline constexpr double standard_atmosphere = 101325.0;

/// Pressure constant beta0 of the upper interface, either absolute or as an
/// offset above P0 - P0_tilde.
struct InterfacePressure {
  enum class Mode { absolute, offset };
  Mode mode = Mode::offset;
  double value = 0.0;

  static InterfacePressure absolute(double beta0) { return {Mode::absolute, beta0}; }
  static InterfacePressure above_thermocline(double offset) {
    return {Mode::offset, offset};
  }
};

/// Complete parameter set of the explicit solution.
struct WaveParameters {
  double a = 0.0;           ///< amplitude parameter [m]
  double k = 0.0;           ///< wavenumber [m^-1]
  double wavelength = 0.0;  ///< 2 pi / k [m]
  double c = 0.0;           ///< phase speed [m s^-1]
  double m = 0.0;           ///< vertical decay rate [m^-1]
  double b = 0.0;           ///< longitudinal orbit parameter [m]
  double d = 0.0;           ///< latitudinal orbit parameter [m]
  double s_star = 0.0;      ///< lowest admissible label height [m]
  double s0 = 0.0;          ///< thermocline label [m]
  double s_plus = 0.0;      ///< upper interface label [m]
  double P0 = standard_atmosphere;  ///< thermocline pressure constant [Pa]
  double P0_tilde = 0.0;    ///< pressure gauge constant [Pa]
  double beta0 = 0.0;       ///< upper interface pressure constant [Pa]
};

/**
 * @brief Derives m, b, d and the pressure constants from (k, a, c).
 *
 * m = sqrt(k^4 c^2 / (k^2 c^2 - f^2)), b = m a / k, d = -f m a / (k^2 c),
 * s_star = s0. Enforces m^2 a^2 exp(-2 m s0) < 1 (ErrorKind::amplitude) and
 * k^2 c^2 > f^2 (ErrorKind::evanescent), then locates s_plus.
 */
WaveParameters derive_parameters(const Environment& env, double k, double a,
                                 double c, double s0, InterfacePressure beta0,
                                 double P0 = standard_atmosphere);

/// Right-hand side of the thermocline pressure-constant relation evaluated at
/// label height s; its value at s0 is P0 - P0_tilde.
double interface_pressure_map(const WaveParameters& params, const Environment& env,
                              double s);

/// Height s_plus > s0 where interface_pressure_map equals beta0, to 1e-9 m.
double solve_interface(const WaveParameters& params, const Environment& env,
                       double beta0);

/// Relative residuals of the compatibility conditions.
struct CompatibilityResiduals {
  double first = 0.0;                ///< m a - k b = 0
  double second = 0.0;               ///< k c d + b f = 0
  double third = 0.0;                ///< m k c^2 b + m c d f = k^2 c^2 a
  double orbit = 0.0;                ///< b^2 = a^2 + d^2
  double pressure_continuity = 0.0;  ///< rho0^2 m^2 (c^2k^2-f^2)^2 = k^4 (rho0 c f_hat + g drho)^2

  double max() const;
};

CompatibilityResiduals compatibility_residuals(const WaveParameters& params,
                                               const Environment& env);

/// |lhs - rhs| / max(|lhs|, |rhs|), zero when both sides vanish.
double relative_residual(double lhs, double rhs);

struct WaveRequest {
  double k = 0.0;
  double a = 0.0;
  double s0 = 0.0;
  InterfacePressure beta0 = InterfacePressure::above_thermocline(0.0);
  Branch branch = Branch::positive;
  double P0 = standard_atmosphere;
  double root_tolerance = default_root_tolerance;
};

/// Phase speed selection followed by derive_parameters.
WaveParameters solve_wave(const Environment& env, const WaveRequest& request);

}  // namespace pollard
