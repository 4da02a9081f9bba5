#pragma once

#include <cstddef>
#include <optional>
#include <ostream>

#include "pollard/cli/config.hpp"
#include "pollard/errors.hpp"

namespace pollard::cli {

enum ExitCode : int {
  exit_success = 0,
  exit_verification_failure = 1,
  exit_config_error = 2,
  exit_numeric_error = 3,
};

/// Maps a pollard::Error kind to the process exit code.
int exit_code_for(ErrorKind kind);

/// Text (csv) or JSON summary of the dispersion solution.
int cmd_dispersion(const RunConfig& config, std::ostream& out);

struct TrajectoryOptions {
  double q = 0.0;
  double r = 0.0;
  std::optional<double> s;        ///< defaults to s0
  double t_begin = 0.0;
  std::optional<double> t_end;    ///< defaults to one period
  std::size_t n = 200;
};

struct ProfileOptions {
  std::optional<double> s;        ///< defaults to s0
  double r = 0.0;
  double t = 0.0;
  double q_begin = 0.0;
  std::optional<double> q_end;    ///< defaults to one wavelength
  std::size_t n = 1000;
};

struct FieldOptions {
  double t = 0.0;
  double r = 0.0;
  std::size_t n_q = 64;
  std::size_t n_s = 32;
  std::optional<double> s_end;    ///< defaults to s_plus
};

int cmd_trajectory(const RunConfig& config, const TrajectoryOptions& opts,
                   std::ostream& out);
int cmd_profile(const RunConfig& config, const ProfileOptions& opts, std::ostream& out);
int cmd_field(const RunConfig& config, const FieldOptions& opts, std::ostream& out);

/// Writes the JSON verification report; returns 0 iff every check passes.
int cmd_verify(const RunConfig& config, std::ostream& out);

}  // namespace pollard::cli
