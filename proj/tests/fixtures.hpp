#pragma once

// Shared parameter sets for the unit and acceptance tests.

#include <numbers>

#include "pollard/dispersion.hpp"
#include "pollard/geo.hpp"

namespace pollard::test {

inline double deg(double d) { return d * std::numbers::pi / 180.0; }

/// a = 10 m, k = 6.28e-2 1/m, 45 N, drho/rho0 = 4e-3.
inline Environment reference_env(double lat_deg = 45.0, double rho_plus = 1004.0) {
  return make_environment(PhysicalConstants{}, deg(lat_deg), 1000.0, rho_plus);
}

inline WaveRequest reference_request() {
  WaveRequest req;
  req.k = 6.28e-2;
  req.a = 10.0;
  req.s0 = 0.5;
  req.beta0 = InterfacePressure::above_thermocline(4000.0);
  return req;
}

inline WaveParameters reference_wave(double lat_deg = 45.0) {
  return solve_wave(reference_env(lat_deg), reference_request());
}

}  // namespace pollard::test
