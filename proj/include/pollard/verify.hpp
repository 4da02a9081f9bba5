#pragma once

/**
 * @file verify.hpp
 * @brief Numerical checks that the constructed fields solve the rotating
 * Euler equations, the boundary conditions, incompressibility and the
 * closed-form vorticity.
 *
 * Two tiers of tolerance are used. Closed-form identities (momentum balance,
 * time independence of the Jacobian, the dynamic condition, the matrix
 * vorticity) are compared at near machine precision. Checks built on finite
 * differences are compared at their truncation-dominated tolerance.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pollard/dispersion.hpp"
#include "pollard/flowfield.hpp"
#include "pollard/geo.hpp"

namespace pollard {

struct VerificationReport {
  std::string check_name;
  double max_residual = 0.0;  ///< dimensionless
  double tolerance = 0.0;
  std::size_t n_samples = 0;
  bool passed = true;  ///< max_residual <= tolerance
  LagrangianLabel worst_label;
  double worst_time = 0.0;
};

struct Tolerances {
  double identity = 1e-12;       ///< momentum balance, matrix vorticity, y-independence
  double jacobian_time = 1e-14;  ///< |J(t) - J(t0)|
  double dynamic = 1e-9;         ///< relative to |P0|
  double pressure_fd = 1e-6;     ///< label gradient and mixed partials
  double kinematic_fd = 1e-8;    ///< relative to |c|
  double divergence_fd = 1e-6;   ///< relative to k |c|
  double curl_fd = 1e-5;         ///< relative to |omega|
};

struct VerifyConfig {
  std::size_t n_theta = 16;
  std::size_t n_s = 16;
  std::size_t n_t = 5;
  std::size_t n_random = 50;
  std::uint64_t seed = 42;
  double r0 = 100.0;           ///< half-width of the latitudinal label strip [m]
  double h_space = 1e-4;       ///< spatial finite-difference step [m]
  Tolerances tol;
};

struct SamplePoint {
  LagrangianLabel label;
  double t = 0.0;
};

using SampleGrid = std::vector<SamplePoint>;

/// (theta, s, t) lattice over one wavelength, the layer and one period.
/// Labels are placed so that the phase at each time equals the lattice theta.
SampleGrid lattice_grid(const WaveParameters& params, const VerifyConfig& config);

/// Seeded random labels inside the layer and times inside one period.
SampleGrid random_grid(const WaveParameters& params, const VerifyConfig& config);

/// (theta, t) lattice on the thermocline sheet s = s0.
SampleGrid sheet_grid(const WaveParameters& params, const VerifyConfig& config);

/// Times of the lattice grid, uniform over one period.
std::vector<double> period_times(const WaveParameters& params, std::size_t n_t);

/// Momentum balance with the pressure gradient of the closed-form pressure
/// carried to Eulerian coordinates through the label Jacobian. Residual is
/// normalized by g.
VerificationReport check_euler(const WaveParameters& params, const Environment& env,
                               const SampleGrid& grid, const VerifyConfig& config = {});

/// pressure.gradient_fd, pressure.y_independence, pressure.mixed_partials.
std::vector<VerificationReport> check_pressure_consistency(
    const WaveParameters& params, const Environment& env, const SampleGrid& grid,
    const VerifyConfig& config = {});

/// boundary.dynamic and boundary.kinematic on the thermocline sheet.
std::vector<VerificationReport> check_boundary(const WaveParameters& params,
                                               const Environment& env,
                                               const SampleGrid& sheet,
                                               const VerifyConfig& config = {});

/// incompressibility.jacobian_time over @p t_grid and
/// incompressibility.divergence_fd at the points of @p grid.
std::vector<VerificationReport> check_incompressibility(
    const WaveParameters& params, const SampleGrid& grid,
    const std::vector<double>& t_grid, const VerifyConfig& config = {});

/// vorticity.matrix_product on @p grid and vorticity.curl_fd on @p fd_grid.
std::vector<VerificationReport> check_vorticity(const WaveParameters& params,
                                                const Site& site,
                                                const SampleGrid& grid,
                                                const SampleGrid& fd_grid,
                                                const VerifyConfig& config = {});

/// Every check in a fixed order. Failures are collected, not thrown.
std::vector<VerificationReport> run_all(const WaveParameters& params,
                                        const Environment& env,
                                        const VerifyConfig& config = {});

bool all_passed(const std::vector<VerificationReport>& reports);

/// Central-difference Eulerian velocity gradient, entry (j, i) = d u_i / d x_j,
/// at the current position of @p label.
Mat3 eulerian_gradient_fd(const WaveParameters& params, const LagrangianLabel& label,
                          double t, double h);

/// |w - eta_t - u eta_x - v eta_y| / |c| at the position of @p particle, with
/// (u, v, w) the particle velocity and eta the material sheet at label height
/// @p s_sheet. Derivatives of eta are central differences with spatial step
/// @p h and time step h / |c|.
double kinematic_residual(const WaveParameters& params, const LagrangianLabel& particle,
                          double s_sheet, double t, double h);

}  // namespace pollard
