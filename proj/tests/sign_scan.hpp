#pragma once

// Brute-force root locator used as an independent oracle for the quartic.

#include <cstddef>
#include <vector>

#include "pollard/dispersion.hpp"

namespace pollard::test {

/// Midpoints of the grid cells on [lo, hi] with spacing @p step where the
/// polynomial changes sign. Evaluates the monomial form directly, without
/// the solver's Horner scheme.
inline std::vector<double> sign_scan_roots(const NondimDispersion& nd, double lo,
                                           double hi, double step) {
  const double e = nd.epsilon, F = nd.F;
  auto p = [&](double x) {
    return x * x * x * x - e * e * (1.0 + F * F) * x * x - 2.0 * F * e * x - 1.0;
  };
  std::vector<double> roots;
  const auto n = static_cast<std::size_t>((hi - lo) / step + 0.5);
  double x0 = lo;
  double p0 = p(x0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double x1 = lo + step * static_cast<double>(i);
    const double p1 = p(x1);
    if (p0 == 0.0) {
      roots.push_back(x0);
    } else if (p0 * p1 < 0.0) {
      roots.push_back(0.5 * (x0 + x1));
    }
    x0 = x1;
    p0 = p1;
  }
  return roots;
}

}  // namespace pollard::test
