#include "pollard/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "pollard/errors.hpp"

namespace pollard::cli {
namespace {

using nlohmann::json;

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError("config key '" + key + "' must be finite");
  return v;
}

std::size_t get_count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::string get_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("config key '" + key + "' must be a string");
  return j.get<std::string>();
}

}  // namespace

RunConfig apply_layer(RunConfig c, const json& layer) {
  if (!layer.is_object()) throw ConfigError("configuration must be a JSON object");
  if (layer.contains("wavenumber") && layer.contains("wavelength")) {
    throw ConfigError("specify exactly one of wavenumber and wavelength");
  }
  for (const auto& [key, value] : layer.items()) {
    if (key == "latitude_deg") {
      c.latitude_deg = get_number(value, key);
    } else if (key == "rho0") {
      c.rho0 = get_number(value, key);
    } else if (key == "rho_plus") {
      c.rho_plus = get_number(value, key);
    } else if (key == "wavenumber") {
      c.wavenumber = get_number(value, key);
      c.wavelength.reset();
    } else if (key == "wavelength") {
      c.wavelength = get_number(value, key);
      c.wavenumber.reset();
    } else if (key == "amplitude") {
      c.amplitude = get_number(value, key);
    } else if (key == "s0") {
      c.s0 = get_number(value, key);
    } else if (key == "beta0_offset") {
      c.beta0_offset = get_number(value, key);
    } else if (key == "P0") {
      c.P0 = get_number(value, key);
    } else if (key == "branch") {
      try {
        c.branch = parse_branch(get_string(value, key));
      } catch (const Error& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "output") {
      const std::string s = get_string(value, key);
      if (s == "csv") {
        c.output = OutputFormat::csv;
      } else if (s == "json") {
        c.output = OutputFormat::json;
      } else {
        throw ConfigError("output must be csv or json, got '" + s + "'");
      }
    } else if (key == "seed") {
      if (!value.is_number_integer() ||
          (!value.is_number_unsigned() && value.get<long long>() < 0)) {
        throw ConfigError("config key 'seed' must be a non-negative integer");
      }
      c.seed = value.get<std::uint64_t>();
    } else if (key == "perturb_c") {
      c.perturb_c = get_number(value, key);
    } else if (key == "n_theta") {
      c.n_theta = get_count(value, key);
    } else if (key == "n_s") {
      c.n_s = get_count(value, key);
    } else if (key == "n_t") {
      c.n_t = get_count(value, key);
    } else if (key == "n_random") {
      c.n_random = get_count(value, key);
    } else if (key == "r0") {
      c.r0 = get_number(value, key);
    } else if (key == "tol_identity") {
      c.tol_identity = get_number(value, key);
    } else if (key == "tol_fd") {
      if (value.is_null()) {
        c.tol_fd.reset();
      } else {
        c.tol_fd = get_number(value, key);
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return c;
}

RunConfig parse_config(const json& layer) { return apply_layer(RunConfig{}, layer); }

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["latitude_deg"] = c.latitude_deg;
  j["rho0"] = c.rho0;
  j["rho_plus"] = c.rho_plus;
  if (c.wavelength) {
    j["wavelength"] = *c.wavelength;
  } else if (c.wavenumber) {
    j["wavenumber"] = *c.wavenumber;
  }
  j["amplitude"] = c.amplitude;
  j["s0"] = c.s0;
  j["beta0_offset"] = c.beta0_offset;
  j["P0"] = c.P0;
  j["branch"] = std::string(to_string(c.branch));
  j["output"] = c.output == OutputFormat::csv ? "csv" : "json";
  j["seed"] = c.seed;
  j["perturb_c"] = c.perturb_c;
  j["n_theta"] = c.n_theta;
  j["n_s"] = c.n_s;
  j["n_t"] = c.n_t;
  j["n_random"] = c.n_random;
  j["r0"] = c.r0;
  j["tol_identity"] = c.tol_identity;
  j["tol_fd"] = c.tol_fd ? json(*c.tol_fd) : json(nullptr);
  return j;
}

double resolved_wavenumber(const RunConfig& c) {
  if (c.wavenumber && c.wavelength) {
    throw ConfigError("specify exactly one of wavenumber and wavelength");
  }
  if (c.wavelength) {
    if (!(*c.wavelength > 0.0)) throw ConfigError("wavelength must be positive");
    return 2.0 * std::numbers::pi / *c.wavelength;
  }
  if (!c.wavenumber) throw ConfigError("a wavenumber or a wavelength is required");
  if (!(*c.wavenumber > 0.0)) throw ConfigError("wavenumber must be positive");
  return *c.wavenumber;
}

VerifyConfig verify_config(const RunConfig& c) {
  VerifyConfig v;
  v.n_theta = c.n_theta;
  v.n_s = c.n_s;
  v.n_t = c.n_t;
  v.n_random = c.n_random;
  v.seed = c.seed;
  v.r0 = c.r0;
  v.tol.identity = c.tol_identity;
  if (c.tol_fd) {
    v.tol.pressure_fd = *c.tol_fd;
    v.tol.kinematic_fd = *c.tol_fd;
    v.tol.divergence_fd = *c.tol_fd;
    v.tol.curl_fd = *c.tol_fd;
  }
  if (c.n_theta == 0 || c.n_s == 0 || c.n_t == 0) {
    throw ConfigError("grid sizes n_theta, n_s and n_t must be positive");
  }
  return v;
}

SolvedWave solve(const RunConfig& c) {
  if (!(std::abs(c.latitude_deg) < 90.0)) {
    throw ConfigError("latitude must lie strictly between -90 and 90 degrees");
  }
  const double phi = c.latitude_deg * std::numbers::pi / 180.0;
  SolvedWave out;
  out.env = make_environment(PhysicalConstants{}, phi, c.rho0, c.rho_plus);

  WaveRequest req;
  req.k = resolved_wavenumber(c);
  req.a = c.amplitude;
  req.s0 = c.s0;
  req.beta0 = InterfacePressure::above_thermocline(c.beta0_offset);
  req.branch = c.branch;
  req.P0 = c.P0;
  out.params = solve_wave(out.env, req);
  out.params.c *= 1.0 + c.perturb_c;
  return out;
}

}  // namespace pollard::cli
