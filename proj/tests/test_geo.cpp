#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pollard/errors.hpp"
#include "pollard/geo.hpp"

using namespace pollard;
using pollard::test::deg;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no pollard::Error thrown";
  return ErrorKind::consistency;
}

}  // namespace

TEST(Coriolis, FrozenValueAt45North) {
  const Site s = coriolis(PhysicalConstants{}, deg(45.0));
  EXPECT_NEAR(s.f, 1.0309616869699863e-4, 1e-19);
  EXPECT_NEAR(s.f_hat, 1.0309616869699863e-4, 1e-19);
}

TEST(Coriolis, EquatorHasNoVerticalComponent) {
  const Site s = coriolis(PhysicalConstants{}, 0.0);
  EXPECT_EQ(s.f, 0.0);
  EXPECT_DOUBLE_EQ(s.f_hat, 2.0 * 7.29e-5);
}

TEST(Coriolis, ComponentsSumToPlanetaryRotation) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> lat(-1.55, 1.55);
  const PhysicalConstants pc;
  const double four_omega2 = 4.0 * pc.omega * pc.omega;
  for (int i = 0; i < 200; ++i) {
    const Site s = coriolis(pc, lat(gen));
    EXPECT_NEAR((s.f * s.f + s.f_hat * s.f_hat) / four_omega2, 1.0, 1e-15);
  }
}

TEST(Coriolis, HemispheresMirror) {
  for (double d : {1.0, 12.5, 45.0, 71.0, 89.0}) {
    const Site n = coriolis(PhysicalConstants{}, deg(d));
    const Site s = coriolis(PhysicalConstants{}, deg(-d));
    EXPECT_EQ(n.f, -s.f);
    EXPECT_EQ(n.f_hat, s.f_hat);
    EXPECT_GT(n.f, 0.0);
  }
}

TEST(Coriolis, RejectsPoles) {
  EXPECT_EQ(kind_of([] { coriolis(PhysicalConstants{}, std::numbers::pi / 2); }),
            ErrorKind::domain);
  EXPECT_EQ(kind_of([] { coriolis(PhysicalConstants{}, -2.0); }), ErrorKind::domain);
  EXPECT_EQ(kind_of([] { coriolis(PhysicalConstants{}, std::nan("")); }),
            ErrorKind::domain);
}

TEST(ReducedGravity, FrozenValues) {
  EXPECT_NEAR(reduced_gravity(PhysicalConstants{}, 1000.0, 1004.0).g_tilde, 0.03924, 1e-17);
  EXPECT_NEAR(reduced_gravity(PhysicalConstants{}, 1000.0, 1002.0).g_tilde, 0.01962, 1e-17);
}

TEST(ReducedGravity, IsPositiveForStableColumn) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> jump(1e-6, 50.0);
  for (int i = 0; i < 100; ++i) {
    const double dr = jump(gen);
    const Stratification s = reduced_gravity(PhysicalConstants{}, 1000.0, 1000.0 + dr);
    EXPECT_GT(s.g_tilde, 0.0);
    EXPECT_NEAR(s.g_tilde, 9.81 * dr / 1000.0, 1e-12 * s.g_tilde);
  }
}

TEST(ReducedGravity, RejectsUnstableAndNeutralColumns) {
  EXPECT_EQ(kind_of([] { reduced_gravity(PhysicalConstants{}, 1000.0, 999.0); }),
            ErrorKind::unstable_stratification);
  EXPECT_EQ(kind_of([] { reduced_gravity(PhysicalConstants{}, 1000.0, 1000.0); }),
            ErrorKind::unstable_stratification);
  EXPECT_EQ(kind_of([] { reduced_gravity(PhysicalConstants{}, 0.0, 1.0); }),
            ErrorKind::domain);
}

TEST(MinWavenumber, FrozenValue) {
  const Stratification s = reduced_gravity(PhysicalConstants{}, 1000.0, 1004.0);
  EXPECT_NEAR(min_wavenumber(PhysicalConstants{}, s), 5.417339449541284e-7, 1e-21);
}

TEST(MinWavenumber, ScalesInverselyWithReducedGravity) {
  const PhysicalConstants pc;
  const double k1 = min_wavenumber(pc, reduced_gravity(pc, 1000.0, 1002.0));
  const double k2 = min_wavenumber(pc, reduced_gravity(pc, 1000.0, 1004.0));
  const double k4 = min_wavenumber(pc, reduced_gravity(pc, 1000.0, 1008.0));
  EXPECT_NEAR(k1 / k2, 2.0, 1e-12);
  EXPECT_NEAR(k2 / k4, 2.0, 1e-12);
}

TEST(Constants, ValidateRejectsNonPositive) {
  PhysicalConstants pc;
  EXPECT_NO_THROW(validate(pc));
  pc.g = 0.0;
  EXPECT_EQ(kind_of([&] { validate(pc); }), ErrorKind::domain);
}

TEST(Environment, BundlesSiteAndStratification) {
  const Environment env = make_environment(PhysicalConstants{}, deg(30.0), 1025.0, 1027.0);
  EXPECT_NEAR(env.site.f, 7.29e-5, 1e-18);
  EXPECT_EQ(env.strat.rho0, 1025.0);
  EXPECT_EQ(env.strat.rho_plus, 1027.0);
}
