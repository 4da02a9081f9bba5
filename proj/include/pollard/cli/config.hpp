#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pollard/dispersion.hpp"
#include "pollard/geo.hpp"
#include "pollard/verify.hpp"

namespace pollard::cli {

/// Malformed or inconsistent run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

/**
 * Flat run configuration. Defaults reproduce the a = 10 m, k = 6.28e-2 m^-1,
 * 45 N, drho/rho0 = 4e-3 wave. Layers are applied as defaults, then the
 * config file, then command-line flags.
 */
struct RunConfig {
  double latitude_deg = 45.0;
  double rho0 = 1000.0;
  double rho_plus = 1004.0;
  std::optional<double> wavenumber = 6.28e-2;  ///< exclusive with wavelength
  std::optional<double> wavelength;
  double amplitude = 10.0;
  double s0 = 0.5;
  double beta0_offset = 4000.0;  ///< beta0 - (P0 - P0_tilde) [Pa]
  double P0 = standard_atmosphere;
  Branch branch = Branch::positive;
  OutputFormat output = OutputFormat::csv;
  std::uint64_t seed = 42;
  double perturb_c = 0.0;  ///< relative change applied to c after solving

  std::size_t n_theta = 16;
  std::size_t n_s = 16;
  std::size_t n_t = 5;
  std::size_t n_random = 50;
  double r0 = 100.0;
  double tol_identity = 1e-12;
  std::optional<double> tol_fd;  ///< overrides every finite-difference tolerance
};

/// Applies the keys of @p layer on top of @p base. Unknown keys, wrong types
/// and both wavenumber and wavelength in one layer raise ConfigError.
RunConfig apply_layer(RunConfig base, const nlohmann::json& layer);

RunConfig parse_config(const nlohmann::json& layer);
RunConfig load_config_file(const std::string& path);

/// Canonical flat JSON form; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& config);

double resolved_wavenumber(const RunConfig& config);
VerifyConfig verify_config(const RunConfig& config);

struct SolvedWave {
  Environment env;
  WaveParameters params;
};

/// Builds the environment and solves the wave, re-validating every gate.
/// Applies perturb_c last.
SolvedWave solve(const RunConfig& config);

}  // namespace pollard::cli
