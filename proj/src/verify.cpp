#include "pollard/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace pollard {
namespace {

// Running maximum of a residual together with the sample that produced it.
class Tracker {
 public:
  Tracker(std::string name, double tolerance)
      : name_(std::move(name)), tolerance_(tolerance) {}

  void add(double residual, const LagrangianLabel& label, double t) {
    ++count_;
    if (std::isnan(worst_)) return;
    // A NaN residual sticks as the worst sample and fails the check.
    if (count_ == 1 || std::isnan(residual) || residual > worst_) {
      worst_ = residual;
      label_ = label;
      time_ = t;
    }
  }

  VerificationReport report() const {
    VerificationReport r;
    r.check_name = name_;
    r.max_residual = worst_;
    r.tolerance = tolerance_;
    r.n_samples = count_;
    r.passed = worst_ <= tolerance_;
    r.worst_label = label_;
    r.worst_time = time_;
    return r;
  }

 private:
  std::string name_;
  double tolerance_;
  double worst_ = 0.0;
  std::size_t count_ = 0;
  LagrangianLabel label_;
  double time_ = 0.0;
};

double period(const WaveParameters& p) { return p.wavelength / std::abs(p.c); }

// Quotient that is zero when the numerator vanishes exactly.
double ratio(double num, double den) {
  if (num == 0.0) return 0.0;
  return num / den;
}

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

Vec3 curl_of(const Mat3& grad) {
  return {grad(1, 2) - grad(2, 1), grad(2, 0) - grad(0, 2), grad(0, 1) - grad(1, 0)};
}

}  // namespace

std::vector<double> period_times(const WaveParameters& p, std::size_t n_t) {
  std::vector<double> out(n_t);
  const double T = period(p);
  for (std::size_t n = 0; n < n_t; ++n) {
    out[n] = T * static_cast<double>(n) / static_cast<double>(n_t);
  }
  return out;
}

SampleGrid lattice_grid(const WaveParameters& p, const VerifyConfig& cfg) {
  SampleGrid grid;
  grid.reserve(cfg.n_theta * cfg.n_s * cfg.n_t);
  const auto times = period_times(p, cfg.n_t);
  for (double t : times) {
    for (std::size_t j = 0; j < cfg.n_s; ++j) {
      const double frac =
          cfg.n_s > 1 ? static_cast<double>(j) / static_cast<double>(cfg.n_s - 1) : 0.0;
      const double s = p.s0 + (p.s_plus - p.s0) * frac;
      for (std::size_t i = 0; i < cfg.n_theta; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(cfg.n_theta);
        grid.push_back({{theta / p.k + p.c * t, 0.0, s}, t});
      }
    }
  }
  return grid;
}

SampleGrid random_grid(const WaveParameters& p, const VerifyConfig& cfg) {
  std::mt19937_64 gen(cfg.seed);
  const double T = period(p);
  SampleGrid grid;
  grid.reserve(cfg.n_random);
  for (std::size_t i = 0; i < cfg.n_random; ++i) {
    const double q = p.wavelength * uniform01(gen);
    const double r = cfg.r0 * (2.0 * uniform01(gen) - 1.0);
    const double s = p.s0 + (p.s_plus - p.s0) * uniform01(gen);
    const double t = T * uniform01(gen);
    grid.push_back({{q, r, s}, t});
  }
  return grid;
}

SampleGrid sheet_grid(const WaveParameters& p, const VerifyConfig& cfg) {
  SampleGrid grid;
  for (double t : period_times(p, cfg.n_t)) {
    for (std::size_t i = 0; i < cfg.n_theta; ++i) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) /
                           static_cast<double>(cfg.n_theta);
      grid.push_back({{theta / p.k + p.c * t, 0.0, p.s0}, t});
    }
  }
  return grid;
}

VerificationReport check_euler(const WaveParameters& p, const Environment& env,
                               const SampleGrid& grid, const VerifyConfig& cfg) {
  Tracker tr("euler", cfg.tol.identity);
  const double g = env.constants.g;
  const double f = env.site.f;
  const double fh = env.site.f_hat;
  for (const auto& pt : grid) {
    const Vec3 acc = acceleration(p, pt.label, pt.t);
    const Vec3 vel = velocity(p, pt.label, pt.t);
    const LabelJacobian jac = jacobian(p, pt.label, pt.t);
    const Vec3 grad_p =
        jac.matrix.partialPivLu().solve(pressure_label_gradient(p, env, pt.label, pt.t));
    const Vec3 res = acc + Vec3{fh * vel.z() - f * vel.y(), f * vel.x(), -fh * vel.x()} +
                     grad_p / env.strat.rho0 + Vec3{0.0, 0.0, g};
    tr.add(res.cwiseAbs().maxCoeff() / g, pt.label, pt.t);
  }
  return tr.report();
}

std::vector<VerificationReport> check_pressure_consistency(const WaveParameters& p,
                                                           const Environment& env,
                                                           const SampleGrid& grid,
                                                           const VerifyConfig& cfg) {
  Tracker gradient("pressure.gradient_fd", cfg.tol.pressure_fd);
  Tracker y_indep("pressure.y_independence", cfg.tol.identity);
  Tracker mixed("pressure.mixed_partials", cfg.tol.pressure_fd);
  const double h = cfg.h_space;
  const double rho_g = env.strat.rho0 * env.constants.g;

  for (const auto& pt : grid) {
    const LagrangianLabel& l = pt.label;
    const double t = pt.t;
    auto P = [&](double dq, double dr, double ds) {
      return pressure(p, env, {l.q + dq, l.r + dr, l.s + ds}, t);
    };

    const Vec3 fd{(P(h, 0, 0) - P(-h, 0, 0)) / (2 * h),
                  (P(0, h, 0) - P(0, -h, 0)) / (2 * h),
                  (P(0, 0, h) - P(0, 0, -h)) / (2 * h)};
    const Vec3 transported =
        jacobian(p, l, t).matrix * momentum_pressure_gradient(p, env, l, t);
    gradient.add(ratio((fd - transported).norm(), transported.norm()), l, t);

    const double p_here = P(0, 0, 0);
    const double shift = ratio(std::abs(P(0, 37.0, 0) - p_here), std::abs(p_here));
    const double p_y =
        std::abs(momentum_pressure_gradient(p, env, l, t).y()) / rho_g;
    y_indep.add(std::max(shift, p_y), l, t);

    auto G = [&](double dq, double ds) {
      return pressure_label_gradient(p, env, {l.q + dq, l.r, l.s + ds}, t);
    };
    const double d_qs = (G(0, h).x() - G(0, -h).x()) / (2 * h);
    const double d_sq = (G(h, 0).z() - G(-h, 0).z()) / (2 * h);
    mixed.add(std::abs(d_qs - d_sq) / (rho_g * p.k), l, t);
  }
  return {gradient.report(), y_indep.report(), mixed.report()};
}

double kinematic_residual(const WaveParameters& p, const LagrangianLabel& particle,
                          double s_sheet, double t, double h) {
  const Vec3 x = position(p, particle, t);
  const Vec3 u = velocity(p, particle, t);
  const LagrangianLabel seed{particle.q, particle.r, s_sheet};
  auto eta = [&](double dx, double dy, double dt) {
    return sheet_elevation(p, s_sheet, x.x() + dx, x.y() + dy, t + dt, seed);
  };
  const double dt = h / std::abs(p.c);
  const double eta_t = (eta(0, 0, dt) - eta(0, 0, -dt)) / (2.0 * dt);
  const double eta_x = (eta(h, 0, 0) - eta(-h, 0, 0)) / (2.0 * h);
  const double eta_y = (eta(0, h, 0) - eta(0, -h, 0)) / (2.0 * h);
  return std::abs(u.z() - eta_t - u.x() * eta_x - u.y() * eta_y) / std::abs(p.c);
}

std::vector<VerificationReport> check_boundary(const WaveParameters& p,
                                               const Environment& env,
                                               const SampleGrid& sheet,
                                               const VerifyConfig& cfg) {
  Tracker dynamic("boundary.dynamic", cfg.tol.dynamic);
  Tracker kinematic("boundary.kinematic", cfg.tol.kinematic_fd);
  const double g = env.constants.g;
  for (const auto& pt : sheet) {
    const LagrangianLabel l{pt.label.q, pt.label.r, p.s0};
    const double z = position(p, l, pt.t).z();
    const double lhs = pressure(p, env, l, pt.t);
    const double rhs = p.P0 - env.strat.rho_plus * g * z;
    dynamic.add(std::abs(lhs - rhs) / std::abs(p.P0), l, pt.t);
    kinematic.add(kinematic_residual(p, l, p.s0, pt.t, cfg.h_space), l, pt.t);
  }
  return {dynamic.report(), kinematic.report()};
}

Mat3 eulerian_gradient_fd(const WaveParameters& p, const LagrangianLabel& label,
                          double t, double h) {
  const Vec3 x = position(p, label, t);
  Mat3 grad;
  for (int j = 0; j < 3; ++j) {
    Vec3 step = Vec3::Zero();
    step[j] = h;
    const Vec3 up = eulerian_velocity(p, x + step, t, label);
    const Vec3 dn = eulerian_velocity(p, x - step, t, label);
    grad.row(j) = ((up - dn) / (2.0 * h)).transpose();
  }
  return grad;
}

std::vector<VerificationReport> check_incompressibility(const WaveParameters& p,
                                                        const SampleGrid& grid,
                                                        const std::vector<double>& t_grid,
                                                        const VerifyConfig& cfg) {
  Tracker jtime("incompressibility.jacobian_time", cfg.tol.jacobian_time);
  Tracker div("incompressibility.divergence_fd", cfg.tol.divergence_fd);
  const double kc = p.k * std::abs(p.c);
  for (const auto& pt : grid) {
    if (!t_grid.empty()) {
      const double j0 = jacobian(p, pt.label, t_grid.front()).determinant;
      for (double t : t_grid) {
        jtime.add(std::abs(jacobian(p, pt.label, t).determinant - j0), pt.label, t);
      }
    }
    const Mat3 grad = eulerian_gradient_fd(p, pt.label, pt.t, cfg.h_space);
    div.add(std::abs(grad.trace()) / kc, pt.label, pt.t);
  }
  return {jtime.report(), div.report()};
}

std::vector<VerificationReport> check_vorticity(const WaveParameters& p,
                                                const Site& site,
                                                const SampleGrid& grid,
                                                const SampleGrid& fd_grid,
                                                const VerifyConfig& cfg) {
  Tracker product("vorticity.matrix_product", cfg.tol.identity);
  Tracker curl("vorticity.curl_fd", cfg.tol.curl_fd);
  for (const auto& pt : grid) {
    const Vec3 analytic = vorticity(p, site, pt.label, pt.t);
    const Vec3 assembled = vorticity_from_jacobian(p, pt.label, pt.t);
    product.add(ratio((assembled - analytic).norm(), analytic.norm()), pt.label, pt.t);
  }
  for (const auto& pt : fd_grid) {
    const Vec3 analytic = vorticity(p, site, pt.label, pt.t);
    const Vec3 fd = curl_of(eulerian_gradient_fd(p, pt.label, pt.t, cfg.h_space));
    curl.add(ratio((fd - analytic).norm(), analytic.norm()), pt.label, pt.t);
  }
  return {product.report(), curl.report()};
}

std::vector<VerificationReport> run_all(const WaveParameters& p, const Environment& env,
                                        const VerifyConfig& cfg) {
  const SampleGrid lattice = lattice_grid(p, cfg);
  const SampleGrid random = random_grid(p, cfg);
  SampleGrid combined = lattice;
  combined.insert(combined.end(), random.begin(), random.end());

  std::vector<VerificationReport> out;
  auto append = [&out](std::vector<VerificationReport> part) {
    out.insert(out.end(), part.begin(), part.end());
  };
  out.push_back(check_euler(p, env, combined, cfg));
  append(check_pressure_consistency(p, env, combined, cfg));
  append(check_boundary(p, env, sheet_grid(p, cfg), cfg));
  append(check_incompressibility(p, random, period_times(p, cfg.n_t), cfg));
  append(check_vorticity(p, env.site, combined, random, cfg));
  return out;
}

bool all_passed(const std::vector<VerificationReport>& reports) {
  return std::all_of(reports.begin(), reports.end(),
                     [](const VerificationReport& r) { return r.passed; });
}

}  // namespace pollard
