#include "pollard/flowfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pollard/errors.hpp"

namespace pollard {
namespace {

constexpr int kMaxInversionIterations = 50;

struct PhaseTerms {
  double e;    // e^{-ms}
  double sin;  // sin(theta)
  double cos;  // cos(theta)
};

PhaseTerms phase_terms(const WaveParameters& p, const LagrangianLabel& l, double t) {
  const double th = phase(p, l.q, t);
  return {std::exp(-p.m * l.s), std::sin(th), std::cos(th)};
}

std::vector<double> uniform_points(double begin, double end, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::domain, "at least two samples are required");
  std::vector<double> out(n);
  const double step = (end - begin) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = begin + step * static_cast<double>(i);
  out.back() = end;
  return out;
}

}  // namespace

double phase(const WaveParameters& p, double q, double t) {
  return p.k * (q - p.c * t);
}

bool in_layer(const WaveParameters& p, const LagrangianLabel& l) {
  return l.s >= p.s0 && l.s <= p.s_plus;
}

Vec3 position(const WaveParameters& p, const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  return {l.q - p.b * ph.e * ph.sin, l.r - p.d * ph.e * ph.cos,
          l.s - p.a * ph.e * ph.cos};
}

Vec3 velocity(const WaveParameters& p, const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double kc = p.k * p.c;
  return {kc * p.b * ph.e * ph.cos, -kc * p.d * ph.e * ph.sin,
          -kc * p.a * ph.e * ph.sin};
}

Vec3 acceleration(const WaveParameters& p, const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double kc2 = p.k * p.k * p.c * p.c;
  return {kc2 * p.b * ph.e * ph.sin, kc2 * p.d * ph.e * ph.cos,
          kc2 * p.a * ph.e * ph.cos};
}

LabelJacobian jacobian(const WaveParameters& p, const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double k = p.k;
  const double m = p.m;
  LabelJacobian out;
  out.matrix << 1.0 - k * p.b * ph.e * ph.cos, k * p.d * ph.e * ph.sin,
      k * p.a * ph.e * ph.sin,  //
      0.0, 1.0, 0.0,            //
      m * p.b * ph.e * ph.sin, m * p.d * ph.e * ph.cos, 1.0 + m * p.a * ph.e * ph.cos;
  out.determinant = out.matrix.determinant();
  return out;
}

double jacobian_determinant(const WaveParameters& p, double s) {
  return 1.0 - p.k * p.m * p.a * p.b * std::exp(-2.0 * p.m * s);
}

Mat3 velocity_label_gradient(const WaveParameters& p, const LagrangianLabel& l,
                             double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double k = p.k;
  const double m = p.m;
  const double kc = k * p.c;
  Mat3 g;
  g << -k * kc * p.b * ph.e * ph.sin, -k * kc * p.d * ph.e * ph.cos,
      -k * kc * p.a * ph.e * ph.cos,  //
      0.0, 0.0, 0.0,                  //
      -m * kc * p.b * ph.e * ph.cos, m * kc * p.d * ph.e * ph.sin,
      m * kc * p.a * ph.e * ph.sin;
  return g;
}

namespace {

// Amplitude of the e^{-ms} cos(theta) term inside the pressure bracket.
double pressure_wave_coeff(const WaveParameters& p, const Environment& env) {
  const double c = p.c;
  return c * p.a * env.site.f_hat - c * p.d * env.site.f - p.k * c * c * p.b -
         p.a * env.constants.g;
}

// Coefficient of e^{-2ms} inside the pressure bracket.
double pressure_mean_coeff(const WaveParameters& p, const Environment& env) {
  const double kc = p.k * p.c;
  return -0.5 * kc * kc * p.b * p.b + 0.5 * env.site.f_hat * kc * p.a * p.b -
         0.5 * env.site.f * kc * p.b * p.d;
}

}  // namespace

double pressure(const WaveParameters& p, const Environment& env,
                const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double bracket = pressure_mean_coeff(p, env) * ph.e * ph.e +
                         pressure_wave_coeff(p, env) * ph.e * ph.cos +
                         env.constants.g * l.s;
  return -env.strat.rho0 * bracket + p.P0_tilde;
}

Vec3 pressure_label_gradient(const WaveParameters& p, const Environment& env,
                             const LagrangianLabel& l, double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double rho0 = env.strat.rho0;
  const double wave = pressure_wave_coeff(p, env);
  const double mean = pressure_mean_coeff(p, env);
  const double p_q = rho0 * p.k * wave * ph.e * ph.sin;
  const double p_s = -rho0 * (-2.0 * p.m * mean * ph.e * ph.e -
                              p.m * wave * ph.e * ph.cos + env.constants.g);
  return {p_q, 0.0, p_s};
}

Vec3 momentum_pressure_gradient(const WaveParameters& p, const Environment& env,
                                const LagrangianLabel& l, double t) {
  const Vec3 acc = acceleration(p, l, t);
  const Vec3 vel = velocity(p, l, t);
  const double f = env.site.f;
  const double fh = env.site.f_hat;
  const Vec3 coriolis{fh * vel.z() - f * vel.y(), f * vel.x(), -fh * vel.x()};
  const Vec3 gravity{0.0, 0.0, env.constants.g};
  return -env.strat.rho0 * (acc + coriolis + gravity);
}

Vec3 vorticity(const WaveParameters& p, const Site& site, const LagrangianLabel& l,
               double t) {
  const PhaseTerms ph = phase_terms(p, l, t);
  const double m = p.m;
  const double k = p.k;
  const double a = p.a;
  const double mae = m * a * ph.e;
  const double scale = 1.0 / (1.0 - mae * mae);
  return scale *
         Vec3{m * m * a * site.f / k * ph.e * ph.sin,
              -p.c * (m * m - k * k) * a * ph.e * ph.cos +
                  p.c * m * a * a * (m * m + k * k) * ph.e * ph.e,
              site.f * m * a * (ph.cos + mae) * ph.e};
}

Vec3 vorticity_from_jacobian(const WaveParameters& p, const LagrangianLabel& l,
                             double t) {
  const LabelJacobian jac = jacobian(p, l, t);
  const Mat3 grad = jac.matrix.partialPivLu().solve(velocity_label_gradient(p, l, t));
  return {grad(1, 2) - grad(2, 1), grad(2, 0) - grad(0, 2), grad(0, 1) - grad(1, 0)};
}

FlowSample sample(const WaveParameters& p, const Environment& env,
                  const LagrangianLabel& l, double t) {
  FlowSample s;
  s.t = t;
  s.label = l;
  s.position = position(p, l, t);
  s.velocity = velocity(p, l, t);
  s.acceleration = acceleration(p, l, t);
  s.pressure = pressure(p, env, l, t);
  s.vorticity = vorticity(p, env.site, l, t);
  s.jacobian_det = jacobian_determinant(p, l.s);
  return s;
}

std::vector<FlowSample> trajectory(const WaveParameters& p, const Environment& env,
                                   const LagrangianLabel& l, double t_begin,
                                   double t_end, std::size_t n_samples) {
  std::vector<FlowSample> out;
  out.reserve(n_samples);
  for (double t : uniform_points(t_begin, t_end, n_samples)) {
    out.push_back(sample(p, env, l, t));
  }
  return out;
}

std::vector<SurfaceSample> profile(const WaveParameters& p, double s, double r,
                                   double t, double q_begin, double q_end,
                                   std::size_t n_samples) {
  std::vector<SurfaceSample> out;
  out.reserve(n_samples);
  for (double q : uniform_points(q_begin, q_end, n_samples)) {
    out.push_back({q, position(p, {q, r, s}, t)});
  }
  return out;
}

InversionResult invert_map(const WaveParameters& p, const Vec3& target, double t,
                           std::optional<LagrangianLabel> guess, double tolerance) {
  InversionResult out;
  out.label = guess.value_or(LagrangianLabel{target.x(), target.y(), target.z()});

  auto residual_of = [&](const LagrangianLabel& l) {
    return Vec3(position(p, l, t) - target);
  };

  Vec3 res = residual_of(out.label);
  out.residual = res.norm();
  // Once inside tolerance, keep stepping while Newton still reduces the error.
  int polish = 2;
  for (int it = 0; it < kMaxInversionIterations; ++it) {
    if (out.residual <= tolerance && (polish-- == 0 || out.residual == 0.0)) break;
    out.residual_history.push_back(out.residual);

    const LabelJacobian jac = jacobian(p, out.label, t);
    if (std::abs(jac.determinant) < 1e-14) {
      throw Error(ErrorKind::singular, "label Jacobian is singular during inversion");
    }
    const Vec3 step = jac.matrix.transpose().partialPivLu().solve(-res);
    LagrangianLabel next{out.label.q + step.x(), out.label.r + step.y(),
                         out.label.s + step.z()};
    const Vec3 next_res = residual_of(next);
    const double next_norm = next_res.norm();
    ++out.iterations;
    if (out.residual <= tolerance && !(next_norm < out.residual)) break;
    out.label = next;
    res = next_res;
    out.residual = next_norm;
  }
  if (!(out.residual <= tolerance)) {
    std::ostringstream msg;
    msg << "label inversion did not converge: residual " << out.residual << " m after "
        << out.iterations << " iterations";
    throw Error(ErrorKind::inversion, msg.str());
  }
  return out;
}

Vec3 eulerian_velocity(const WaveParameters& p, const Vec3& point, double t,
                       std::optional<LagrangianLabel> guess) {
  return velocity(p, invert_map(p, point, t, guess).label, t);
}

double sheet_elevation(const WaveParameters& p, double s_sheet, double x, double y,
                       double t, std::optional<LagrangianLabel> guess) {
  double q = guess ? guess->q : x;
  double r = guess ? guess->r : y;
  for (int it = 0; it < kMaxInversionIterations; ++it) {
    const LagrangianLabel l{q, r, s_sheet};
    const Vec3 pos = position(p, l, t);
    const double rx = pos.x() - x;
    const double ry = pos.y() - y;
    if (std::hypot(rx, ry) <= 1e-13 * std::max({1.0, std::abs(x), std::abs(y)})) {
      return pos.z();
    }
    // d(x, y)/d(q, r) has the block [[x_q, 0], [y_q, 1]].
    const Mat3 jm = jacobian(p, l, t).matrix;
    const double dq = -rx / jm(0, 0);
    const double dr = -ry - jm(0, 1) * dq;
    q += dq;
    r += dr;
  }
  throw Error(ErrorKind::inversion, "sheet elevation search did not converge");
}

}  // namespace pollard
