#include "pollard/cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pollard/cli/export.hpp"
#include "pollard/errors.hpp"
#include "pollard/flowfield.hpp"
#include "pollard/verify.hpp"

namespace pollard::cli {
namespace {

using ojson = nlohmann::ordered_json;

void emit(const Table& table, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
}

void require_label_height(const WaveParameters& p, double s) {
  if (!(s >= p.s0) || !(s <= p.s_plus)) {
    throw Error(ErrorKind::domain, "label height s = " + format_double(s) +
                                       " m lies outside the layer [" + format_double(p.s0) +
                                       ", " + format_double(p.s_plus) + "] m");
  }
}

void require_samples(std::size_t n, const char* what) {
  if (n < 2) throw ConfigError(std::string(what) + " must be at least 2");
}

double period(const WaveParameters& p) { return p.wavelength / std::abs(p.c); }

}  // namespace

int exit_code_for(ErrorKind kind) {
  return is_numeric(kind) ? exit_numeric_error : exit_config_error;
}

int cmd_dispersion(const RunConfig& config, std::ostream& out) {
  const double k = resolved_wavenumber(config);
  const double phi = config.latitude_deg * std::numbers::pi / 180.0;
  if (!(std::abs(config.latitude_deg) < 90.0)) {
    throw ConfigError("latitude must lie strictly between -90 and 90 degrees");
  }
  const Environment env = make_environment(PhysicalConstants{}, phi, config.rho0,
                                           config.rho_plus);

  ojson j;
  j["latitude_deg"] = config.latitude_deg;
  j["k"] = k;
  j["wavelength"] = 2.0 * std::numbers::pi / k;
  j["f"] = env.site.f;
  j["f_hat"] = env.site.f_hat;
  j["g_tilde"] = env.strat.g_tilde;
  j["speed_scale"] = std::sqrt(env.strat.g_tilde / k);

  if (env.site.f == 0.0) {
    const EquatorialSpeeds eq = solve_equatorial(env.constants, env.strat, k);
    j["mode"] = "equatorial";
    j["c_plus"] = eq.c_plus;
    j["c_minus"] = eq.c_minus;
  } else {
    const NondimDispersion nd = nondimensionalize(env.site, env.strat, k);
    j["mode"] = "mid_latitude";
    j["epsilon"] = nd.epsilon;
    j["F"] = nd.F;
    const double disc = nd.derivative_discriminant();
    j["derivative_discriminant"] = disc;
    j["derivative_discriminant_sign"] = disc < 0.0 ? "negative" : "non-negative";
    DispersionRoots roots;
    try {
      roots = solve_dispersion(nd, env, k);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::regime) throw;
      throw Error(ErrorKind::regime,
                  std::string(e.what()) +
                      ". Remedy: lower epsilon with a larger wavenumber, a larger density"
                      " jump or a latitude closer to the Equator");
    }
    const double w = nd.bracket_width();
    j["x_plus"] = roots.x_plus;
    j["x_minus"] = roots.x_minus;
    j["c_plus"] = roots.c_plus;
    j["c_minus"] = roots.c_minus;
    j["x_plus_minus_1"] = roots.x_plus - 1.0;
    j["x_minus_plus_1"] = roots.x_minus + 1.0;
    j["bracket_width"] = w;
    j["bracket_holds"] = roots.x_plus - 1.0 > 0.0 && roots.x_plus - 1.0 < w &&
                         roots.x_minus + 1.0 > 0.0 && roots.x_minus + 1.0 < w;
  }

  const SolvedWave sw = solve(config);
  const WaveParameters& p = sw.params;
  j["branch"] = std::string(to_string(config.branch));
  j["c"] = p.c;
  j["m"] = p.m;
  j["b"] = p.b;
  j["d"] = p.d;
  j["s0"] = p.s0;
  j["s_plus"] = p.s_plus;
  j["P0_tilde"] = p.P0_tilde;
  j["beta0"] = p.beta0;
  const CompatibilityResiduals res = compatibility_residuals(p, sw.env);
  j["compatibility"] = {{"first", res.first},
                        {"second", res.second},
                        {"third", res.third},
                        {"orbit", res.orbit},
                        {"pressure_continuity", res.pressure_continuity}};

  if (config.output == OutputFormat::json) {
    out << j.dump(2) << '\n';
    return exit_success;
  }
  out << "quantity,value\n";
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) {
        out << key << '.' << sub << ',' << format_double(v.get<double>()) << '\n';
      }
    } else if (value.is_number()) {
      out << key << ',' << format_double(value.get<double>()) << '\n';
    } else if (value.is_boolean()) {
      out << key << ',' << (value.get<bool>() ? "true" : "false") << '\n';
    } else {
      out << key << ',' << value.get<std::string>() << '\n';
    }
  }
  return exit_success;
}

int cmd_trajectory(const RunConfig& config, const TrajectoryOptions& opts,
                   std::ostream& out) {
  require_samples(opts.n, "trajectory sample count");
  const SolvedWave sw = solve(config);
  const WaveParameters& p = sw.params;
  const LagrangianLabel label{opts.q, opts.r, opts.s.value_or(p.s0)};
  require_label_height(p, label.s);
  const double t_end = opts.t_end.value_or(opts.t_begin + period(p));
  emit(flow_table(trajectory(p, sw.env, label, opts.t_begin, t_end, opts.n)),
       config.output, out);
  return exit_success;
}

int cmd_profile(const RunConfig& config, const ProfileOptions& opts, std::ostream& out) {
  require_samples(opts.n, "profile sample count");
  const SolvedWave sw = solve(config);
  const WaveParameters& p = sw.params;
  const double s = opts.s.value_or(p.s0);
  require_label_height(p, s);
  const double q_end = opts.q_end.value_or(opts.q_begin + p.wavelength);
  emit(profile_table(profile(p, s, opts.r, opts.t, opts.q_begin, q_end, opts.n)),
       config.output, out);
  return exit_success;
}

int cmd_field(const RunConfig& config, const FieldOptions& opts, std::ostream& out) {
  require_samples(opts.n_q, "field q count");
  require_samples(opts.n_s, "field s count");
  const SolvedWave sw = solve(config);
  const WaveParameters& p = sw.params;
  const double s_end = opts.s_end.value_or(p.s_plus);
  require_label_height(p, s_end);

  std::vector<FlowSample> samples;
  samples.reserve(opts.n_q * opts.n_s);
  for (std::size_t j = 0; j < opts.n_s; ++j) {
    const double s = p.s0 + (s_end - p.s0) * static_cast<double>(j) /
                                static_cast<double>(opts.n_s - 1);
    for (std::size_t i = 0; i < opts.n_q; ++i) {
      // Periodic in q, so the last column stops one step short of L.
      const double q = p.wavelength * static_cast<double>(i) / static_cast<double>(opts.n_q);
      samples.push_back(sample(p, sw.env, {q, opts.r, s}, opts.t));
    }
  }
  emit(flow_table(samples), config.output, out);
  return exit_success;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const VerifyConfig vc = verify_config(config);
  const SolvedWave sw = solve(config);
  const WaveParameters& p = sw.params;
  const std::vector<VerificationReport> reports = run_all(p, sw.env, vc);
  const bool ok = all_passed(reports);

  ojson j;
  j["passed"] = ok;
  j["config"] = ojson::parse(to_json(config).dump());
  j["parameters"] = {{"k", p.k}, {"a", p.a},   {"c", p.c},           {"m", p.m},
                     {"b", p.b}, {"d", p.d},   {"s0", p.s0},         {"s_plus", p.s_plus},
                     {"P0", p.P0}, {"P0_tilde", p.P0_tilde}, {"beta0", p.beta0}};
  auto checks = ojson::array();
  for (const auto& r : reports) checks.push_back(report_json(r));
  j["checks"] = std::move(checks);
  out << j.dump(2) << '\n';
  return ok ? exit_success : exit_verification_failure;
}

}  // namespace pollard::cli
