// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pollard/cli/commands.hpp"
#include "pollard/flowfield.hpp"
#include "pollard/verify.hpp"
#include "sign_scan.hpp"

using namespace pollard;
using pollard::test::reference_env;
using pollard::test::reference_request;
using pollard::test::reference_wave;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome exact_residuals() {
  const auto t0 = std::chrono::steady_clock::now();
  const Environment env = reference_env();
  const WaveParameters p = reference_wave();
  VerifyConfig cfg;  // 16 x 16 x 5
  const VerificationReport r = check_euler(p, env, lattice_grid(p, cfg), cfg);
  const double dt = seconds_since(t0);
  return {r.passed && r.max_residual <= 1e-12 && r.n_samples == 1280 && dt < 1.0,
          fmt("max residual %.3e over 1280 points, %.3f s", r.max_residual, dt)};
}

Outcome bracket_theorem() {
  const auto t0 = std::chrono::steady_clock::now();
  int cases = 0, bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    for (int j = 0; j < 20; ++j) {
      const double eps = 1e-3 + (5e-2 - 1e-3) * i / 19.0;
      const double F = 0.42 + (2.4 - 0.42) * j / 19.0;
      const NondimDispersion nd = NondimDispersion::from_ratios(eps, F);
      if (!(nd.derivative_discriminant() < 0.0)) continue;
      ++cases;
      const QuarticRoots r = solve_quartic(nd);
      const double w = eps * F;
      const bool inside = r.x_plus - 1 > 0 && r.x_plus - 1 < w && r.x_minus + 1 > 0 &&
                          r.x_minus + 1 < w;
      const auto scan = test::sign_scan_roots(nd, -3.0, 3.0, 1e-4);
      if (!inside || scan.size() != 2) {
        ++bad;
        continue;
      }
      const double dev =
          std::max(std::abs(scan[0] - r.x_minus), std::abs(scan[1] - r.x_plus));
      worst = std::max(worst, dev);
      if (dev > 1e-4) ++bad;
    }
  }
  const double dt = seconds_since(t0);
  return {cases == 400 && bad == 0 && dt < 5.0,
          fmt("%.0f admissible cases, %.0f violations, max scan deviation %.2e", cases, bad,
              worst) +
              fmt(", %.3f s", dt)};
}

Outcome equatorial_consistency() {
  const double k = 6.28e-2;
  const Environment eq = reference_env(0.0);
  const EquatorialSpeeds s = solve_equatorial(eq.constants, eq.strat, k);
  const double om = eq.constants.omega;
  const double root = std::sqrt(om * om + k * eq.strat.g_tilde);
  const double closed = std::max(relative_residual(s.c_plus, (om + root) / k),
                                 relative_residual(s.c_minus, (om - root) / k));
  const Environment near = make_environment(PhysicalConstants{}, 1e-3, 1000.0, 1004.0);
  const DispersionRoots d =
      solve_dispersion(nondimensionalize(near.site, near.strat, k), near, k);
  const double cont = std::max(relative_residual(d.c_plus, s.c_plus),
                               relative_residual(d.c_minus, s.c_minus));
  return {closed <= 1e-12 && cont <= 1e-4,
          fmt("closed form %.2e, mid-latitude at 1e-3 rad %.2e", closed, cont)};
}

Outcome compatibility_chain() {
  const Environment env = reference_env();
  const WaveParameters p = reference_wave();
  const double ok = compatibility_residuals(p, env).max();
  const WaveParameters bad = derive_parameters(
      env, p.k, p.a, 1.01 * p.c, p.s0, InterfacePressure::above_thermocline(4000.0));
  const double broken = compatibility_residuals(bad, env).max();
  return {ok <= 1e-12 && broken >= 1e-4,
          fmt("solved %.2e, c perturbed by 1%% %.2e", ok, broken)};
}

Outcome geometry() {
  const WaveParameters p = reference_wave();
  const LagrangianLabel l{0.0, 0.0, p.s0};
  const Vec3 centre{l.q, l.r, l.s};
  const double radius = p.b * std::exp(-p.m * l.s);
  const double T = p.wavelength / std::abs(p.c);
  double dev = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double d = (position(p, l, T * i / 10000.0) - centre).norm();
    dev = std::max(dev, std::abs(d - radius) / radius);
  }
  const Vec3 d1 = position(p, l, 0.0) - centre;
  const Vec3 d2 = position(p, l, 0.25 * T) - centre;
  const Vec3 n = d1.cross(d2).normalized();
  const double tilt = std::acos(std::abs(n.y()));
  const double tilt_err = std::abs(tilt - std::atan(std::abs(p.d) / p.a));
  const WaveParameters south = reference_wave(-45.0);
  const bool flips = p.d < 0.0 && south.d > 0.0;
  return {dev <= 1e-12 && tilt_err <= 1e-10 && std::abs(n.x()) <= 1e-12 && flips,
          fmt("radial deviation %.2e, tilt error %.2e, d(45N) = %.4e", dev, tilt_err, p.d) +
              fmt(", d(45S) = %.4e", south.d)};
}

Outcome decay_law() {
  const WaveParameters p = reference_wave();
  auto peak_to_peak = [&](double s) {
    double lo = 1e300, hi = -1e300;
    for (const auto& sp : profile(p, s, 0.0, 0.0, 0.0, p.wavelength, 4001)) {
      lo = std::min(lo, sp.point.z());
      hi = std::max(hi, sp.point.z());
    }
    return hi - lo;
  };
  const double ratio = peak_to_peak(p.s0 + p.wavelength / 2) / peak_to_peak(p.s0);
  const double expected = std::exp(-p.m * p.wavelength / 2);
  return {std::abs(ratio - expected) <= 1e-6 && std::abs(ratio - std::exp(-std::numbers::pi)) < 1e-3,
          fmt("ratio %.8f, exp(-mL/2) %.8f, exp(-pi) %.8f", ratio, expected,
              std::exp(-std::numbers::pi))};
}

Outcome incompressibility_vorticity() {
  const Environment env = reference_env();
  const WaveParameters p = reference_wave();
  const VerifyConfig cfg;
  const SampleGrid random = random_grid(p, cfg);
  const auto inc = check_incompressibility(p, random, period_times(p, cfg.n_t), cfg);
  const auto vor = check_vorticity(p, env.site, lattice_grid(p, cfg), random, cfg);
  const double jt = inc[0].max_residual, div = inc[1].max_residual;
  const double curl = vor[1].max_residual;

  const Environment eq_env = reference_env(0.0);
  const WaveParameters eq = reference_wave(0.0);
  WaveRequest crit_req = reference_request();
  crit_req.a = 1.0 / crit_req.k;
  const WaveParameters crit = solve_wave(eq_env, crit_req);
  double eq_err = 0.0;
  for (double s : {eq.s0, 2.0, 10.0, 40.0}) {
    for (double q : {0.0, 7.0, 33.0}) {
      const Vec3 w = vorticity(eq, eq_env.site, {q, 0.0, s}, 3.0);
      const double e2 = std::exp(-2 * eq.m * s);
      const double m2a2 = eq.m * eq.m * eq.a * eq.a;
      const double ref = 2 * eq.k * eq.c * m2a2 * e2 / (1 - m2a2 * e2);
      eq_err = std::max({eq_err, std::abs(w.x()), std::abs(w.z()),
                         std::abs(w.y() - ref) / std::abs(ref)});
      const Vec3 wc = vorticity(crit, eq_env.site, {q, 0.0, s}, 3.0);
      const double e2k = std::exp(-2 * crit.k * s);
      const double refc = 2 * crit.k * crit.c * e2k / (1 - e2k);
      eq_err = std::max({eq_err, std::abs(wc.x()), std::abs(wc.z()),
                         std::abs(wc.y() - refc) / std::abs(refc)});
    }
  }
  return {jt <= 1e-14 && div <= 1e-6 && curl <= 1e-5 && eq_err <= 1e-14,
          fmt("J variation %.2e, divergence/(kc) %.2e, curl %.2e", jt, div, curl) +
              fmt(", equatorial forms %.2e", eq_err)};
}

Outcome boundary_conditions() {
  const Environment env = reference_env();
  const WaveParameters p = reference_wave();
  const VerifyConfig cfg;
  const auto r = check_boundary(p, env, sheet_grid(p, cfg), cfg);
  return {r[0].max_residual <= 1e-9 && r[1].max_residual <= 1e-8,
          fmt("dynamic %.2e (x |P0|), kinematic %.2e (x |c|)", r[0].max_residual,
              r[1].max_residual)};
}

Outcome determinism() {
  cli::RunConfig c;
  c.seed = 2024;
  std::ostringstream a, b;
  const int ca = cli::cmd_verify(c, a);
  const int cb = cli::cmd_verify(c, b);
  const bool same = a.str() == b.str() && !a.str().empty();
  return {same && ca == 0 && cb == 0,
          fmt("%.0f bytes, identical = %.0f", static_cast<double>(a.str().size()), same)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"exact-solution residuals", exact_residuals},
      {"dispersion bracket theorem", bracket_theorem},
      {"equatorial consistency", equatorial_consistency},
      {"compatibility-condition chain", compatibility_chain},
      {"orbit geometry", geometry},
      {"decay law", decay_law},
      {"incompressibility and vorticity", incompressibility_vorticity},
      {"boundary conditions", boundary_conditions},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %zu  %-32s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
