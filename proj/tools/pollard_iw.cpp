// pollard-iw: parameter solver, field exporter and verification driver for
// exact three-dimensional internal waves on the f-plane.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pollard/cli/commands.hpp"
#include "pollard/cli/config.hpp"
#include "pollard/errors.hpp"

using namespace pollard::cli;

namespace {

struct Flags {
  std::string config_path;
  std::string out_path;
  double lat = 0, k = 0, wavelength = 0, amplitude = 0, rho0 = 0, rho_plus = 0, s0 = 0;
  double beta0_offset = 0, perturb_c = 0, tol_identity = 0, tol_fd = 0;
  std::string branch, format;
  std::uint64_t seed = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Lagrangian internal waves with Coriolis effects"};
  app.require_subcommand(1);
  app.fallthrough();

  Flags fl;
  auto* o_config = app.add_option("--config", fl.config_path, "flat JSON config file");
  auto* o_lat = app.add_option("--lat", fl.lat, "latitude [deg]");
  auto* o_k = app.add_option("--k", fl.k, "wavenumber [1/m]");
  auto* o_wl = app.add_option("--wavelength", fl.wavelength, "wavelength [m]");
  o_k->excludes(o_wl);
  auto* o_amp = app.add_option("--amplitude", fl.amplitude, "amplitude parameter a [m]");
  auto* o_rho0 = app.add_option("--rho0", fl.rho0, "density above the thermocline [kg/m^3]");
  auto* o_rhop = app.add_option("--rho-plus", fl.rho_plus, "density below the thermocline [kg/m^3]");
  auto* o_s0 = app.add_option("--s0", fl.s0, "thermocline label [m]");
  auto* o_beta = app.add_option("--beta0-offset", fl.beta0_offset,
                                "interface pressure above P0 - P0_tilde [Pa]");
  auto* o_branch = app.add_option("--branch", fl.branch, "positive|negative|equatorial");
  app.add_option("--out", fl.out_path, "output file (stdout if omitted)");
  auto* o_format = app.add_option("--format", fl.format, "csv|json");
  auto* o_seed = app.add_option("--seed", fl.seed, "seed for random sample points");
  auto* o_pert = app.add_option("--perturb-c", fl.perturb_c,
                                "relative change of c after solving (negative control)");
  auto* o_tid = app.add_option("--tol-identity", fl.tol_identity,
                               "tolerance of closed-form identities");
  auto* o_tfd = app.add_option("--tol-fd", fl.tol_fd,
                               "tolerance of every finite-difference check");

  auto* sub_disp = app.add_subcommand("dispersion", "solve the dispersion relation");

  TrajectoryOptions traj;
  double traj_s = 0, traj_t1 = 0;
  auto* sub_traj = app.add_subcommand("trajectory", "particle path over time");
  sub_traj->add_option("--q", traj.q, "longitudinal label [m]");
  sub_traj->add_option("--r", traj.r, "latitudinal label [m]");
  auto* o_traj_s = sub_traj->add_option("--s", traj_s, "vertical label [m] (default s0)");
  sub_traj->add_option("--t0", traj.t_begin, "start time [s]");
  auto* o_traj_t1 = sub_traj->add_option("--t1", traj_t1, "end time [s] (default one period)");
  sub_traj->add_option("--n", traj.n, "number of samples");

  ProfileOptions prof;
  double prof_s = 0, prof_q1 = 0;
  auto* sub_prof = app.add_subcommand("profile", "material sheet at fixed time");
  auto* o_prof_s = sub_prof->add_option("--s", prof_s, "sheet label [m] (default s0)");
  sub_prof->add_option("--r", prof.r, "latitudinal label [m]");
  sub_prof->add_option("--t", prof.t, "time [s]");
  sub_prof->add_option("--q0", prof.q_begin, "first q [m]");
  auto* o_prof_q1 = sub_prof->add_option("--q1", prof_q1, "last q [m] (default q0 + L)");
  sub_prof->add_option("--n", prof.n, "number of samples");

  FieldOptions field;
  double field_s1 = 0;
  auto* sub_field = app.add_subcommand("field", "fields on a (q, s) label grid");
  sub_field->add_option("--t", field.t, "time [s]");
  sub_field->add_option("--r", field.r, "latitudinal label [m]");
  sub_field->add_option("--nq", field.n_q, "samples per wavelength");
  sub_field->add_option("--ns", field.n_s, "samples across the layer");
  auto* o_field_s1 = sub_field->add_option("--s1", field_s1, "top label (default s_plus)");

  auto* sub_verify = app.add_subcommand("verify", "run every verification check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_success : exit_config_error;
  }

  try {
    RunConfig config;
    if (o_config->count() > 0) config = load_config_file(fl.config_path);

    nlohmann::json layer = nlohmann::json::object();
    auto set = [&](CLI::Option* opt, const char* key, auto value) {
      if (opt->count() > 0) layer[key] = value;
    };
    set(o_lat, "latitude_deg", fl.lat);
    set(o_k, "wavenumber", fl.k);
    set(o_wl, "wavelength", fl.wavelength);
    set(o_amp, "amplitude", fl.amplitude);
    set(o_rho0, "rho0", fl.rho0);
    set(o_rhop, "rho_plus", fl.rho_plus);
    set(o_s0, "s0", fl.s0);
    set(o_beta, "beta0_offset", fl.beta0_offset);
    set(o_branch, "branch", fl.branch);
    set(o_format, "output", fl.format);
    set(o_seed, "seed", fl.seed);
    set(o_pert, "perturb_c", fl.perturb_c);
    set(o_tid, "tol_identity", fl.tol_identity);
    set(o_tfd, "tol_fd", fl.tol_fd);
    config = apply_layer(config, layer);

    if (o_traj_s->count() > 0) traj.s = traj_s;
    if (o_traj_t1->count() > 0) traj.t_end = traj_t1;
    if (o_prof_s->count() > 0) prof.s = prof_s;
    if (o_prof_q1->count() > 0) prof.q_end = prof_q1;
    if (o_field_s1->count() > 0) field.s_end = field_s1;

    std::function<int(std::ostream&)> run;
    if (sub_disp->parsed()) {
      run = [&](std::ostream& os) { return cmd_dispersion(config, os); };
    } else if (sub_traj->parsed()) {
      run = [&](std::ostream& os) { return cmd_trajectory(config, traj, os); };
    } else if (sub_prof->parsed()) {
      run = [&](std::ostream& os) { return cmd_profile(config, prof, os); };
    } else if (sub_field->parsed()) {
      run = [&](std::ostream& os) { return cmd_field(config, field, os); };
    } else if (sub_verify->parsed()) {
      run = [&](std::ostream& os) { return cmd_verify(config, os); };
    }

    if (fl.out_path.empty()) return run(std::cout);
    std::ofstream file(fl.out_path, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot open output file '" << fl.out_path << "'\n";
      return exit_config_error;
    }
    const int code = run(file);
    file.flush();
    if (!file) {
      std::cerr << "error: failed writing '" << fl.out_path << "'\n";
      return exit_config_error;
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const pollard::Error& e) {
    std::cerr << pollard::to_string(e.kind()) << " error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
}
