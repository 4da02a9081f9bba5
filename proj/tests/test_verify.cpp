#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pollard/verify.hpp"

using namespace pollard;
using pollard::test::reference_env;
using pollard::test::reference_request;
using pollard::test::reference_wave;

namespace {

const VerificationReport& find(const std::vector<VerificationReport>& reports,
                               const std::string& name) {
  for (const auto& r : reports) {
    if (r.check_name == name) return r;
  }
  throw std::runtime_error("missing report " + name);
}

class Verify : public ::testing::Test {
 protected:
  Environment env = reference_env();
  WaveParameters p = reference_wave();
  VerifyConfig cfg;
};

}  // namespace

TEST_F(Verify, ReferenceWavePassesEveryCheck) {
  const auto reports = run_all(p, env, cfg);
  ASSERT_EQ(reports.size(), 10u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << r.check_name << " residual " << r.max_residual;
    EXPECT_GT(r.n_samples, 0u);
    EXPECT_LE(r.max_residual, r.tolerance);
  }
  EXPECT_TRUE(all_passed(reports));
}

TEST_F(Verify, ReportOrderIsFixed) {
  const auto reports = run_all(p, env, cfg);
  const char* names[] = {"euler",
                         "pressure.gradient_fd",
                         "pressure.y_independence",
                         "pressure.mixed_partials",
                         "boundary.dynamic",
                         "boundary.kinematic",
                         "incompressibility.jacobian_time",
                         "incompressibility.divergence_fd",
                         "vorticity.matrix_product",
                         "vorticity.curl_fd"};
  for (std::size_t i = 0; i < reports.size(); ++i) EXPECT_EQ(reports[i].check_name, names[i]);
}

TEST(VerifySweep, PassesAcrossLatitudesAndBranches) {
  VerifyConfig cfg;
  cfg.n_theta = 8;
  cfg.n_s = 6;
  cfg.n_t = 3;
  cfg.n_random = 10;
  for (double lat : {0.0, 15.0, 45.0, 75.0, -30.0}) {
    for (Branch br : {Branch::positive, Branch::negative}) {
      WaveRequest req = reference_request();
      req.branch = br;
      const Environment env = reference_env(lat);
      const WaveParameters p = solve_wave(env, req);
      for (const auto& r : run_all(p, env, cfg)) {
        EXPECT_TRUE(r.passed) << "lat " << lat << " " << r.check_name << " "
                              << r.max_residual;
      }
    }
  }
}

TEST_F(Verify, LatticeGridShape) {
  const SampleGrid g = lattice_grid(p, cfg);
  ASSERT_EQ(g.size(), 16u * 16u * 5u);
  for (const auto& pt : g) {
    EXPECT_GE(pt.label.s, p.s0);
    EXPECT_LE(pt.label.s, p.s_plus);
    const double theta = phase(p, pt.label.q, pt.t);
    const double steps = theta / (2 * std::numbers::pi / 16);
    EXPECT_NEAR(steps, std::round(steps), 1e-9);
  }
  EXPECT_EQ(sheet_grid(p, cfg).size(), 16u * 5u);
}

TEST_F(Verify, RandomGridIsSeeded) {
  const SampleGrid a = random_grid(p, cfg);
  const SampleGrid b = random_grid(p, cfg);
  ASSERT_EQ(a.size(), cfg.n_random);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label.q, b[i].label.q);
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_LE(std::abs(a[i].label.r), cfg.r0);
  }
  VerifyConfig other = cfg;
  other.seed = 43;
  EXPECT_NE(random_grid(p, other)[0].label.q, a[0].label.q);
}

TEST_F(Verify, EulerFailsWhenPhaseSpeedIsPerturbed) {
  // c changed by 1% with m, b, d kept. The momentum balance still holds to
  // first order in f/(kc), so the residual is small but far above tolerance.
  WaveParameters bad = p;
  bad.c *= 1.01;
  const VerificationReport r = check_euler(bad, env, lattice_grid(bad, cfg), cfg);
  EXPECT_FALSE(r.passed);
  // Lower bound: the broken condition k c d + b f = 0 leaves a meridional
  // acceleration mismatch of order k |c| (k c d + b f) e^{-m s0} / g.
  const double broken = std::abs(p.k * bad.c * p.d + p.b * env.site.f);
  const double bound = 0.5 * p.k * std::abs(bad.c) * broken * std::exp(-p.m * p.s0) /
                       env.constants.g;
  EXPECT_GT(r.max_residual, bound);
  EXPECT_GT(r.max_residual, 1e3 * cfg.tol.identity);
}

TEST_F(Verify, DynamicConditionFailsWhenPhaseSpeedIsPerturbed) {
  WaveParameters bad = p;
  bad.c *= 1.01;
  const auto reports = check_boundary(bad, env, sheet_grid(bad, cfg), cfg);
  EXPECT_FALSE(find(reports, "boundary.dynamic").passed);
  EXPECT_GT(find(reports, "boundary.dynamic").max_residual, 1e-5);
}

TEST_F(Verify, KinematicFailsForParticleOffTheSheet) {
  const double dt_h = cfg.h_space;
  double worst = 0.0;
  for (int i = 0; i < 8; ++i) {
    const LagrangianLabel off{p.wavelength * i / 8.0, 0.0, p.s0 + 1.0};
    const double res = kinematic_residual(p, off, p.s0, 20.0, dt_h);
    worst = std::max(worst, res);
    const LagrangianLabel on{off.q, 0.0, p.s0};
    EXPECT_LE(kinematic_residual(p, on, p.s0, 20.0, dt_h), cfg.tol.kinematic_fd);
  }
  EXPECT_GT(worst, 1e-3);
}

TEST_F(Verify, IncompressibilityFailsWhenOrbitIsDistorted) {
  WaveParameters bad = p;
  bad.b *= 1.01;
  const auto reports = check_incompressibility(bad, random_grid(bad, cfg),
                                               period_times(bad, cfg.n_t), cfg);
  EXPECT_FALSE(find(reports, "incompressibility.jacobian_time").passed);
  EXPECT_FALSE(find(reports, "incompressibility.divergence_fd").passed);
}

TEST_F(Verify, PressureGradientFailsWhenOrbitIsDistorted) {
  WaveParameters bad = p;
  bad.b *= 1.01;
  const auto reports = check_pressure_consistency(bad, env, random_grid(bad, cfg), cfg);
  EXPECT_FALSE(find(reports, "pressure.gradient_fd").passed);
}

TEST_F(Verify, VorticityFailsWhenTiltIsWrong) {
  WaveParameters bad = p;
  bad.d *= 1.5;
  const SampleGrid g = random_grid(bad, cfg);
  const auto reports = check_vorticity(bad, env.site, g, g, cfg);
  EXPECT_FALSE(find(reports, "vorticity.matrix_product").passed);
  EXPECT_FALSE(find(reports, "vorticity.curl_fd").passed);
}

TEST_F(Verify, ReportsWorstSample) {
  WaveParameters bad = p;
  bad.c *= 1.01;
  const SampleGrid g = lattice_grid(bad, cfg);
  const VerificationReport r = check_euler(bad, env, g, cfg);
  EXPECT_EQ(r.n_samples, g.size());
  const VerificationReport one = check_euler(bad, env, {{r.worst_label, r.worst_time}}, cfg);
  EXPECT_EQ(one.max_residual, r.max_residual);
}

TEST_F(Verify, NanResidualFails) {
  WaveParameters bad = p;
  bad.c = std::nan("");
  const VerificationReport r = check_euler(bad, env, lattice_grid(p, cfg), cfg);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(std::isnan(r.max_residual));
}

TEST_F(Verify, TolerancesAreConfigurable) {
  cfg.tol.identity = 1e-20;
  const VerificationReport r = check_euler(p, env, lattice_grid(p, cfg), cfg);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.tolerance, 1e-20);
}

TEST_F(Verify, EulerianGradientIsTraceFree) {
  const LagrangianLabel l{12.0, 3.0, 6.0};
  const Mat3 grad = eulerian_gradient_fd(p, l, 5.0, 1e-4);
  EXPECT_LE(std::abs(grad.trace()), 1e-6 * p.k * p.c);
  // Velocity does not depend on y.
  EXPECT_LE(grad.row(1).norm(), 1e-9);
}
