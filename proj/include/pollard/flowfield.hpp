#pragma once

/**
 * @file flowfield.hpp
 * @brief Evaluation of the explicit Lagrangian internal-wave solution.
 *
 * A particle with labels (q, r, s) sits at
 *
 *     x = q - b e^{-ms} sin(theta)
 *     y = r - d e^{-ms} cos(theta)
 *     z = s - a e^{-ms} cos(theta),      theta = k (q - c t),
 *
 * in the layer between the thermocline (s = s0) and the upper interface
 * (s = s_plus). Everything here is closed form except invert_map, which
 * recovers labels from a position by Newton iteration.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pollard/dispersion.hpp"
#include "pollard/geo.hpp"

namespace pollard {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct LagrangianLabel {
  double q = 0.0;  ///< longitudinal label [m]
  double r = 0.0;  ///< latitudinal label [m]
  double s = 0.0;  ///< vertical label [m]
};

/// theta = k (q - c t).
double phase(const WaveParameters& params, double q, double t);

/// True when s lies in [s0, s_plus].
bool in_layer(const WaveParameters& params, const LagrangianLabel& label);

Vec3 position(const WaveParameters& params, const LagrangianLabel& label, double t);
Vec3 velocity(const WaveParameters& params, const LagrangianLabel& label, double t);
Vec3 acceleration(const WaveParameters& params, const LagrangianLabel& label,
                  double t);

/// Label Jacobian. Row i holds the derivatives of (x, y, z) with respect to
/// the i-th label, i.e. matrix(i, j) = d x_j / d label_i.
struct LabelJacobian {
  Mat3 matrix;
  double determinant = 1.0;
};

LabelJacobian jacobian(const WaveParameters& params, const LagrangianLabel& label,
                       double t);

/// Closed-form determinant 1 - k m a b e^{-2ms}; independent of t.
double jacobian_determinant(const WaveParameters& params, double s);

/// Velocity gradient with respect to labels, matrix(i, j) = d u_j / d label_i.
Mat3 velocity_label_gradient(const WaveParameters& params,
                             const LagrangianLabel& label, double t);

/// Pressure in the layer. The cos^2 term, whose coefficient a^2 + d^2 - b^2
/// vanishes, is omitted.
double pressure(const WaveParameters& params, const Environment& env,
                const LagrangianLabel& label, double t);

/// Analytic (P_q, P_r, P_s) of the closed-form pressure.
Vec3 pressure_label_gradient(const WaveParameters& params, const Environment& env,
                             const LagrangianLabel& label, double t);

/// (P_x, P_y, P_z) obtained by solving the momentum balance for the pressure
/// gradient with the closed-form acceleration and velocity.
Vec3 momentum_pressure_gradient(const WaveParameters& params, const Environment& env,
                                const LagrangianLabel& label, double t);

/// Vorticity (w_y - v_z, u_z - w_x, v_x - u_y) in closed form.
Vec3 vorticity(const WaveParameters& params, const Site& site,
               const LagrangianLabel& label, double t);

/// Vorticity assembled from the inverse label Jacobian and the label
/// gradient of the velocity.
Vec3 vorticity_from_jacobian(const WaveParameters& params,
                             const LagrangianLabel& label, double t);

struct FlowSample {
  double t = 0.0;
  LagrangianLabel label;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 acceleration = Vec3::Zero();
  double pressure = 0.0;
  Vec3 vorticity = Vec3::Zero();
  double jacobian_det = 1.0;
};

FlowSample sample(const WaveParameters& params, const Environment& env,
                  const LagrangianLabel& label, double t);

/// n_samples >= 2 uniformly spaced times over [t_begin, t_end].
std::vector<FlowSample> trajectory(const WaveParameters& params, const Environment& env,
                                   const LagrangianLabel& label, double t_begin,
                                   double t_end, std::size_t n_samples);

struct SurfaceSample {
  double q = 0.0;
  Vec3 point = Vec3::Zero();
};

/// Points of the material sheet at fixed (s, r, t), uniform in q over
/// [q_begin, q_end]. s = s0 gives the thermocline.
std::vector<SurfaceSample> profile(const WaveParameters& params, double s, double r,
                                   double t, double q_begin, double q_end,
                                   std::size_t n_samples);

struct InversionResult {
  LagrangianLabel label;
  int iterations = 0;
  double residual = 0.0;                ///< |position(label) - target| [m]
  std::vector<double> residual_history;  ///< residual before each Newton step
};

inline constexpr double default_inversion_tolerance = 1e-10;

/**
 * @brief Labels of the particle found at @p target at time @p t.
 *
 * Newton iteration on position(label) = target, starting from @p guess
 * (the target coordinates when omitted). Throws ErrorKind::inversion after
 * 50 iterations without reaching @p tolerance.
 */
InversionResult invert_map(const WaveParameters& params, const Vec3& target, double t,
                           std::optional<LagrangianLabel> guess = std::nullopt,
                           double tolerance = default_inversion_tolerance);

/// Eulerian velocity at a fixed point, through invert_map.
Vec3 eulerian_velocity(const WaveParameters& params, const Vec3& point, double t,
                       std::optional<LagrangianLabel> guess = std::nullopt);

/// Height of the material sheet s = @p s_sheet above the horizontal point
/// (x, y) at time t. @p guess seeds the (q, r) search.
double sheet_elevation(const WaveParameters& params, double s_sheet, double x,
                       double y, double t, std::optional<LagrangianLabel> guess = std::nullopt);

}  // namespace pollard
