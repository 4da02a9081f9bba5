#include "pollard/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "pollard/errors.hpp"

namespace pollard {
namespace {

constexpr int kMaxBracketExpansions = 10;
constexpr int kMaxBisection = 200;
constexpr int kMaxNewton = 100;
constexpr double kInterfaceTolerance = 1e-9;

bool opposite_signs(double a, double b) { return (a < 0.0) != (b < 0.0); }

// Bisection down to a narrow bracket, then Newton steps kept inside it.
double refine_root(const NondimDispersion& nd, Bracket br, double tol) {
  double lo = br.lo;
  double hi = br.hi;
  double p_lo = nd(lo);

  for (int i = 0; i < kMaxBisection; ++i) {
    if (hi - lo <= 1e-8 * std::max(1.0, std::abs(lo))) break;
    const double mid = 0.5 * (lo + hi);
    const double p_mid = nd(mid);
    if (p_mid == 0.0) return mid;
    if (opposite_signs(p_lo, p_mid)) {
      hi = mid;
    } else {
      lo = mid;
      p_lo = p_mid;
    }
  }

  double x = 0.5 * (lo + hi);
  double last_residual = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kMaxNewton; ++i) {
    const double p = nd(x);
    last_residual = std::abs(p);
    const double x2 = x * x;
    if (last_residual <= tol * std::max(1.0, x2 * x2)) return x;

    if (opposite_signs(p_lo, p)) {
      hi = x;
    } else {
      lo = x;
      p_lo = p;
    }
    const double dp = nd.derivative(x);
    double next = (dp != 0.0) ? x - p / dp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
  }

  std::ostringstream msg;
  msg << "dispersion root did not converge: bracket [" << lo << ", " << hi
      << "], |P(x)| = " << last_residual << ", tolerance " << tol
      << " (eps = " << nd.epsilon << ", F = " << nd.F << ")";
  throw Error(ErrorKind::convergence, msg.str());
}

// Largest real root of y^3 + b2 y^2 + b1 y + b0.
double largest_cubic_root(double b2, double b1, double b0) {
  const double shift = b2 / 3.0;
  const double p = b1 - b2 * b2 / 3.0;
  const double q = 2.0 * b2 * b2 * b2 / 27.0 - b2 * b1 / 3.0 + b0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  double t;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    t = std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq);
  } else if (p == 0.0) {
    t = 0.0;
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    t = r * std::cos(std::acos(arg) / 3.0);
  }
  return t - shift;
}

void append_quadratic_roots(double lin, double cst, std::vector<double>& out) {
  const double disc = lin * lin - 4.0 * cst;
  if (disc < 0.0) return;
  const double sq = std::sqrt(disc);
  // Citardauq form avoids cancellation in the smaller root.
  const double qv = -0.5 * (lin + std::copysign(sq, lin));
  if (qv != 0.0) {
    out.push_back(qv);
    out.push_back(cst / qv);
  } else {
    out.push_back(0.0);
    out.push_back(0.0);
  }
}

}  // namespace

NondimDispersion NondimDispersion::from_ratios(double epsilon, double F) {
  NondimDispersion nd;
  nd.epsilon = epsilon;
  nd.F = F;
  nd.coeffs = {1.0, 0.0, -epsilon * epsilon * (1.0 + F * F), -2.0 * F * epsilon,
               -1.0};
  return nd;
}

double NondimDispersion::operator()(double x) const {
  return (((coeffs[0] * x + coeffs[1]) * x + coeffs[2]) * x + coeffs[3]) * x +
         coeffs[4];
}

double NondimDispersion::derivative(double x) const {
  return ((4.0 * coeffs[0] * x + 3.0 * coeffs[1]) * x + 2.0 * coeffs[2]) * x +
         coeffs[3];
}

double NondimDispersion::derivative_discriminant() const {
  const double e2 = epsilon * epsilon;
  const double s = 1.0 + F * F;
  return 128.0 * e2 * e2 * e2 * s * s * s - 1728.0 * F * F * e2;
}

NondimDispersion nondimensionalize(const Site& site, const Stratification& strat,
                                   double k) {
  if (site.f == 0.0) {
    throw Error(ErrorKind::equatorial_branch,
                "f = 0 on the Equator: F is undefined, use solve_equatorial");
  }
  const double threshold =
      (site.f * site.f + site.f_hat * site.f_hat) / strat.g_tilde;
  if (!(k > threshold) || !std::isfinite(k)) {
    std::ostringstream msg;
    msg << "wavenumber " << k << " m^-1 must exceed 4 Omega^2 / g_tilde = "
        << threshold << " m^-1";
    throw Error(ErrorKind::domain, msg.str());
  }
  const double scale = std::sqrt(strat.g_tilde * k);
  return NondimDispersion::from_ratios(site.f / scale, site.f_hat / site.f);
}

RootBrackets root_brackets(const NondimDispersion& nd) {
  const double disc = nd.derivative_discriminant();
  if (!(disc < 0.0)) {
    std::ostringstream msg;
    msg << "derivative discriminant " << disc
        << " is not negative (eps = " << nd.epsilon << ", F = " << nd.F
        << "); the two-root isolation only covers mid-latitudes";
    throw Error(ErrorKind::regime, msg.str());
  }

  const double w = nd.bracket_width();
  RootBrackets out;

  // Positive root: P(0) = -1, so only the upper end may need to move out.
  Bracket pos{1.0, 1.0 + w};
  int grow = 0;
  while (!(nd(pos.lo) < 0.0 && nd(pos.hi) > 0.0)) {
    if (++grow > kMaxBracketExpansions) {
      throw Error(ErrorKind::bracket, "no sign change around the positive root");
    }
    if (!(nd(pos.lo) < 0.0)) pos.lo *= 0.5;
    if (!(nd(pos.hi) > 0.0)) pos.hi = 1.0 + w * std::ldexp(1.0, grow);
  }
  out.expansions = grow;

  // Negative root: P(0) = -1 caps the upper end at zero.
  Bracket neg{-1.0, std::min(-1.0 + w, 0.0)};
  grow = 0;
  while (!(nd(neg.lo) > 0.0 && nd(neg.hi) < 0.0)) {
    if (++grow > kMaxBracketExpansions) {
      throw Error(ErrorKind::bracket, "no sign change around the negative root");
    }
    if (!(nd(neg.lo) > 0.0)) neg.lo = -1.0 - w * (std::ldexp(1.0, grow) - 1.0);
    if (!(nd(neg.hi) < 0.0)) neg.hi *= 0.5;
  }
  out.expansions = std::max(out.expansions, grow);

  out.positive = pos;
  out.negative = neg;
  return out;
}

QuarticRoots solve_quartic(const NondimDispersion& nd, double tol) {
  const RootBrackets br = root_brackets(nd);
  return QuarticRoots{refine_root(nd, br.positive, tol),
                      refine_root(nd, br.negative, tol)};
}

std::vector<double> ferrari_real_roots(const NondimDispersion& nd) {
  // Depressed quartic X^4 + p X^2 + q X + r.
  const double p = nd.coeffs[2];
  const double q = nd.coeffs[3];
  const double r = nd.coeffs[4];
  std::vector<double> roots;

  if (q == 0.0) {
    const double disc = p * p - 4.0 * r;
    if (disc >= 0.0) {
      for (double z : {(-p + std::sqrt(disc)) / 2.0, (-p - std::sqrt(disc)) / 2.0}) {
        if (z >= 0.0) {
          roots.push_back(std::sqrt(z));
          roots.push_back(-std::sqrt(z));
        }
      }
    }
  } else {
    // Resolvent: y^3 - (p/2) y^2 - r y + (p r / 2 - q^2 / 8) = 0, 2y - p > 0.
    const double y = largest_cubic_root(-p / 2.0, -r, p * r / 2.0 - q * q / 8.0);
    const double s = std::sqrt(std::max(2.0 * y - p, 0.0));
    append_quadratic_roots(-s, y + q / (2.0 * s), roots);
    append_quadratic_roots(s, y - q / (2.0 * s), roots);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

DispersionRoots solve_dispersion(const NondimDispersion& nd, const Environment& env,
                                 double k, double tol) {
  const QuarticRoots x = solve_quartic(nd, tol);
  const double scale = std::sqrt(env.strat.g_tilde / k);

  DispersionRoots out;
  out.x_plus = x.x_plus;
  out.x_minus = x.x_minus;
  out.c_plus = x.x_plus * scale;
  out.c_minus = x.x_minus * scale;

  const Site& site = env.site;
  const Stratification& st = env.strat;
  const double g = env.constants.g;
  for (double c : {out.c_plus, out.c_minus}) {
    const double lhs = st.rho0 * st.rho0 * c * c * (c * c * k * k - site.f * site.f);
    const double rhs_root = st.rho0 * c * site.f_hat + g * (st.rho_plus - st.rho0);
    const double res = relative_residual(lhs, rhs_root * rhs_root);
    if (res > tol + 64.0 * std::numeric_limits<double>::epsilon()) {
      std::ostringstream msg;
      msg << "dimensional dispersion relation residual " << res
          << " exceeds tolerance at c = " << c;
      throw Error(ErrorKind::consistency, msg.str());
    }
  }
  return out;
}

EquatorialSpeeds solve_equatorial(const PhysicalConstants& constants,
                                  const Stratification& strat, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorKind::domain, "wavenumber must be positive");
  }
  const double om = constants.omega;
  const double root = std::sqrt(om * om + k * strat.g_tilde);
  EquatorialSpeeds out;
  out.c_plus = (om + root) / k;
  // Product of the roots is -g_tilde / k.
  out.c_minus = -strat.g_tilde / (k * out.c_plus);
  return out;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::positive: return "positive";
    case Branch::negative: return "negative";
    case Branch::equatorial: return "equatorial";
  }
  return "positive";
}

Branch parse_branch(std::string_view text) {
  if (text == "positive") return Branch::positive;
  if (text == "negative") return Branch::negative;
  if (text == "equatorial") return Branch::equatorial;
  throw Error(ErrorKind::domain, "branch must be positive, negative or equatorial, got '" +
                                     std::string(text) + "'");
}

double select_phase_speed(const Environment& env, double k, Branch branch,
                          double tol) {
  if (env.site.f == 0.0) {
    const EquatorialSpeeds eq = solve_equatorial(env.constants, env.strat, k);
    return branch == Branch::negative ? eq.c_minus : eq.c_plus;
  }
  if (branch == Branch::equatorial) {
    throw Error(ErrorKind::domain,
                "the equatorial branch requires latitude 0; use positive or negative");
  }
  const NondimDispersion nd = nondimensionalize(env.site, env.strat, k);
  const DispersionRoots roots = solve_dispersion(nd, env, k, tol);
  return branch == Branch::negative ? roots.c_minus : roots.c_plus;
}

double relative_residual(double lhs, double rhs) {
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  if (denom == 0.0) return 0.0;
  return std::abs(lhs - rhs) / denom;
}

double CompatibilityResiduals::max() const {
  return std::max({first, second, third, orbit, pressure_continuity});
}

CompatibilityResiduals compatibility_residuals(const WaveParameters& p,
                                               const Environment& env) {
  const double f = env.site.f;
  const double fh = env.site.f_hat;
  const double rho0 = env.strat.rho0;
  const double drho = env.strat.rho_plus - env.strat.rho0;
  const double g = env.constants.g;
  const double k = p.k;
  const double c = p.c;

  CompatibilityResiduals r;
  r.first = relative_residual(p.m * p.a, k * p.b);
  r.second = relative_residual(k * c * p.d, -p.b * f);
  r.third = relative_residual(p.m * k * c * c * p.b + p.m * c * p.d * f,
                              k * k * c * c * p.a);
  r.orbit = relative_residual(p.b * p.b, p.a * p.a + p.d * p.d);
  const double span = c * c * k * k - f * f;
  const double rhs_root = rho0 * c * fh + g * drho;
  r.pressure_continuity =
      relative_residual(rho0 * rho0 * p.m * p.m * span * span,
                        k * k * k * k * rhs_root * rhs_root);
  return r;
}

double interface_pressure_map(const WaveParameters& p, const Environment& env,
                              double s) {
  const double f = env.site.f;
  const double fh = env.site.f_hat;
  const double g = env.constants.g;
  const double k = p.k;
  const double c = p.c;
  const double e2 = std::exp(-2.0 * p.m * s);
  const double bracket = -0.5 * k * k * c * c * p.b * p.b * e2 +
                         0.5 * fh * k * c * p.a * p.b * e2 -
                         0.5 * f * k * c * p.b * p.d * e2 + g * s;
  return -env.strat.rho0 * bracket + env.strat.rho_plus * g * s;
}

double solve_interface(const WaveParameters& p, const Environment& env,
                       double beta0) {
  const double base = interface_pressure_map(p, env, p.s0);
  if (!(beta0 > base) || !std::isfinite(beta0)) {
    std::ostringstream msg;
    msg << "beta0 = " << beta0 << " Pa must exceed P0 - P0_tilde = " << base << " Pa";
    throw Error(ErrorKind::ordering, msg.str());
  }

  const double f = env.site.f;
  const double fh = env.site.f_hat;
  const double slope_far = (env.strat.rho_plus - env.strat.rho0) * env.constants.g;
  const double decay_coeff = p.k * p.k * p.c * p.c * p.b * p.b -
                             fh * p.k * p.c * p.a * p.b + f * p.k * p.c * p.b * p.d;
  const double slope_s0 =
      slope_far - env.strat.rho0 * p.m * std::exp(-2.0 * p.m * p.s0) * decay_coeff;
  if (!(slope_s0 > 0.0)) {
    throw Error(ErrorKind::domain,
                "interface pressure map is not increasing at s0; s_plus is not unique");
  }

  double lo = p.s0;
  double span = std::max(1.0, (beta0 - base) / slope_far);
  double hi = p.s0 + span;
  for (int i = 0; interface_pressure_map(p, env, hi) < beta0; ++i) {
    if (i > 60) throw Error(ErrorKind::convergence, "could not bracket s_plus");
    lo = hi;
    span *= 2.0;
    hi = p.s0 + span;
  }
  for (int i = 0; i < kMaxBisection && hi - lo > kInterfaceTolerance; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (interface_pressure_map(p, env, mid) < beta0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > kInterfaceTolerance) {
    throw Error(ErrorKind::convergence, "interface bisection did not converge");
  }
  return 0.5 * (lo + hi);
}

WaveParameters derive_parameters(const Environment& env, double k, double a,
                                 double c, double s0, InterfacePressure beta0,
                                 double P0) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw Error(ErrorKind::domain, "wavenumber must be positive");
  }
  const double k_min = min_wavenumber(env.constants, env.strat);
  if (!(k > k_min)) {
    std::ostringstream msg;
    msg << "wavenumber " << k << " m^-1 must exceed 4 Omega^2 / g_tilde = " << k_min
        << " m^-1";
    throw Error(ErrorKind::domain, msg.str());
  }
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw Error(ErrorKind::domain, "amplitude must be non-negative");
  }
  if (!(s0 > 0.0) || !std::isfinite(s0)) {
    throw Error(ErrorKind::domain, "thermocline label s0 must be positive");
  }
  if (!std::isfinite(c) || c == 0.0) {
    throw Error(ErrorKind::domain, "phase speed must be finite and nonzero");
  }

  const double f = env.site.f;
  const double kc = k * c;
  const double span = kc * kc - f * f;
  if (!(span > 0.0)) {
    std::ostringstream msg;
    msg << "k^2 c^2 = " << kc * kc << " does not exceed f^2 = " << f * f
        << "; m would be infinite or imaginary";
    throw Error(ErrorKind::evanescent, msg.str());
  }

  WaveParameters p;
  p.a = a;
  p.k = k;
  p.wavelength = 2.0 * std::numbers::pi / k;
  p.c = c;
  p.m = k * k * std::abs(c) / std::sqrt(span);
  p.b = p.m * a / k;
  p.d = -f * p.m * a / (k * k * c);
  p.s_star = s0;
  p.s0 = s0;

  const double gate = p.m * a * std::exp(-p.m * s0);
  if (!(gate < 1.0)) {
    std::ostringstream msg;
    msg << "amplitude too large: m a exp(-m s0) = " << gate
        << " >= 1; the displacement amplitude a exp(-m s0) = " << a * std::exp(-p.m * s0)
        << " m must stay below 1/m = " << 1.0 / p.m << " m (a < "
        << std::exp(p.m * s0) / p.m << " m at s0 = " << s0 << " m)";
    throw Error(ErrorKind::amplitude, msg.str());
  }

  // The cos^2 term of the pressure carries a^2 + d^2 - b^2, which vanishes.
  const double orbit_defect = p.a * p.a + p.d * p.d - p.b * p.b;
  if (std::abs(orbit_defect) > 1e-12 * std::max(p.b * p.b, 1e-300)) {
    std::ostringstream msg;
    msg << "a^2 + d^2 - b^2 = " << orbit_defect << " is not zero";
    throw Error(ErrorKind::consistency, msg.str());
  }

  const double thermocline_constant = interface_pressure_map(p, env, s0);
  p.P0 = P0;
  p.P0_tilde = P0 - thermocline_constant;
  p.beta0 = beta0.mode == InterfacePressure::Mode::absolute
                ? beta0.value
                : thermocline_constant + beta0.value;
  p.s_plus = solve_interface(p, env, p.beta0);
  return p;
}

WaveParameters solve_wave(const Environment& env, const WaveRequest& request) {
  const double c =
      select_phase_speed(env, request.k, request.branch, request.root_tolerance);
  return derive_parameters(env, request.k, request.a, c, request.s0, request.beta0,
                           request.P0);
}

}  // namespace pollard
