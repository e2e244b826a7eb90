#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "unruh_fluid/dispersion.hpp"

using namespace unruh_fluid;
using dispersion::CondensateParams;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kR0Max = dispersion::r0_max();
}

TEST_CASE("f(0) = 1 exactly for random parameters") {
  std::mt19937_64 rng(81);
  std::uniform_real_distribution<double> r0d(0.0, kR0Max);
  std::uniform_real_distribution<double> ad(0.01, 6.0);
  for (int i = 0; i < 1000; ++i) {
    const CondensateParams p{r0d(rng), ad(rng)};
    CHECK(dispersion::f_of_zeta(p, 0.0) == 1.0);
  }
}

TEST_CASE("R0 = 0 reduces to the contact Bogoliubov branch") {
  std::mt19937_64 rng(82);
  std::uniform_real_distribution<double> zd(0.0, 50.0);
  const CondensateParams p{0.0, 1.0};
  for (int i = 0; i < 1000; ++i) {
    const double z = zd(rng);
    const double expect = std::sqrt(1.0 + 0.25 * z * z);
    CHECK_THAT(dispersion::f_of_zeta(p, z), WithinRel(expect, 1e-14));
  }
  CHECK_THAT(dispersion::f_of_zeta(p, 2.0), WithinRel(std::numbers::sqrt2, 1e-14));
}

TEST_CASE("DDI dominance dips below 1 near the roton") {
  const CondensateParams p{kR0Max, 3.0};
  const double f = dispersion::f_of_zeta(p, 0.9);
  CHECK(f < 1.0);
  CHECK_THAT(f, WithinRel(0.16376805924493242, 1e-12));
}

TEST_CASE("f_squared_prime analytic derivative") {
  const CondensateParams p0{0.0, 1.0};
  for (double z : {0.1, 1.0, 2.0, 7.0})
    CHECK_THAT(dispersion::f_squared_prime(p0, z), WithinRel(0.5 * z, 1e-13));

  const CondensateParams p{kR0Max, 3.0};
  CHECK_THAT(dispersion::f_squared_prime(p, 0.0),
             WithinRel(-1.5 * kR0Max * std::sqrt(3.0), 1e-13));

  // stationarity at the computed minimum
  const auto info = dispersion::analyze_roton(p);
  REQUIRE(info.zeta_c.has_value());
  CHECK_THAT(dispersion::f_squared_prime(p, *info.zeta_c), WithinAbs(0.0, 1e-8));
}

TEST_CASE("analytic derivative matches central finite differences") {
  std::mt19937_64 rng(83);
  std::uniform_real_distribution<double> r0d(0.0, kR0Max);
  std::uniform_real_distribution<double> ad(0.05, 2.0);
  std::uniform_real_distribution<double> zd(0.01, 20.0);
  for (int i = 0; i < 200; ++i) {
    const CondensateParams p{r0d(rng), ad(rng)};
    const dispersion::BogoliubovDispersion d(p);
    const double z = zd(rng);
    const double h = 1e-5 * std::max(z, 1.0);
    const double fd = (d.f_squared(z + h) - d.f_squared(z - h)) / (2.0 * h);
    const double an = d.f_squared_prime(z);
    CHECK_THAT(an, WithinAbs(fd, std::max(1e-8, 1e-6 * std::abs(an))));
  }
}

TEST_CASE("zeta_f_prime") {
  const CondensateParams p{0.0, 1.0};
  CHECK_THAT(dispersion::zeta_f_prime(p, 1e-9), WithinRel(1.0, 1e-8));
  CHECK_THAT(dispersion::zeta_f_prime(p, 2.0),
             WithinRel(3.0 / std::numbers::sqrt2, 1e-13));
  CHECK_THROWS_AS(dispersion::zeta_f_prime(p, 0.0), std::domain_error);

  // near-critical fold: (zeta f)' turns negative somewhere
  const CondensateParams pf{kR0Max, 3.4};
  const auto info = dispersion::analyze_roton(pf);
  REQUIRE(info.stable);
  CHECK_FALSE(info.zf_monotone);
  REQUIRE(info.zeta_c.has_value());
  CHECK(dispersion::zeta_f_prime(pf, 0.95 * *info.zeta_c) < 0.0);
}

TEST_CASE("bogoliubov_weight equals zeta/(2f) and the raw u,v reduction") {
  const CondensateParams p{0.0, 1.0};
  CHECK_THAT(dispersion::bogoliubov_weight(p, 2.0),
             WithinRel(1.0 / std::numbers::sqrt2, 1e-13));
  // phonon limit: weight -> zeta/2
  CHECK_THAT(dispersion::bogoliubov_weight(p, 1e-7) / 1e-7, WithinRel(0.5, 1e-6));

  // raw Bogoliubov parameters: H = zeta^2/2, A_k = f^2 - zeta^2/4 (M* units)
  std::mt19937_64 rng(84);
  std::uniform_real_distribution<double> zd(0.05, 10.0);
  std::uniform_real_distribution<double> r0d(0.0, kR0Max);
  for (int i = 0; i < 200; ++i) {
    const CondensateParams q{r0d(rng), 1.5};
    const dispersion::BogoliubovDispersion d(q);
    const double z = zd(rng);
    const double fsq = d.f_squared(z);
    if (fsq <= 0.0) continue;
    const double hk = 0.5 * z * z;
    const double ak = fsq - 0.25 * z * z;
    const double norm = std::pow(hk * hk + 2.0 * hk * ak, 0.25);
    const double u = (std::sqrt(hk) + std::sqrt(hk + 2.0 * ak)) / (2.0 * norm);
    const double v = (std::sqrt(hk) - std::sqrt(hk + 2.0 * ak)) / (2.0 * norm);
    CHECK_THAT(u * u - v * v, WithinAbs(1.0, 1e-12));
    CHECK_THAT(dispersion::bogoliubov_weight(q, z),
               WithinRel((u + v) * (u + v), 1e-11));
  }
}

TEST_CASE("analyze_roton classifications") {
  SECTION("contact-only: superluminal, no interior minimum") {
    const auto info = dispersion::analyze_roton({0.0, 1.0});
    CHECK(info.stable);
    CHECK_FALSE(info.zeta_c.has_value());
    CHECK(info.f_c == 1.0);
    CHECK(info.zf_monotone);
  }
  SECTION("DDI dominance at A=3: roton, stable, folded zeta f") {
    const auto info = dispersion::analyze_roton({kR0Max, 3.0});
    CHECK(info.stable);
    REQUIRE(info.zeta_c.has_value());
    CHECK_THAT(*info.zeta_c, WithinAbs(0.8850729489197580, 1e-8));
    CHECK_THAT(info.f_c, WithinRel(0.16332494971643324, 1e-9));
    CHECK(info.f_c < 1.0);
    CHECK_FALSE(info.zf_monotone);
  }
  SECTION("beyond the critical A: unstable, reported not thrown") {
    const auto info = dispersion::analyze_roton({kR0Max, 3.5});
    CHECK_FALSE(info.stable);
    CHECK(info.f_c == 0.0);
  }
}

TEST_CASE("f_c bounds f on a sampled grid") {
  const CondensateParams p{kR0Max, 2.5};
  const auto info = dispersion::analyze_roton(p);
  REQUIRE(info.stable);
  REQUIRE(info.zeta_c.has_value());
  CHECK(info.f_c <= 1.0);
  for (double z = 0.01; z < 30.0; z *= 1.13)
    CHECK(dispersion::f_of_zeta(p, z) >= info.f_c * (1.0 - 1e-12));
}

TEST_CASE("instability error carries the offending zeta") {
  const CondensateParams p{kR0Max, 3.6};  // A > A_c
  try {
    dispersion::f_of_zeta(p, 0.9);
    FAIL("expected InstabilityError");
  } catch (const InstabilityError& e) {
    CHECK(e.zeta() == 0.9);
    CHECK(e.f_squared() < 0.0);
  }
}

TEST_CASE("critical_a anchors") {
  SECTION("DDI dominance reproduces the instability threshold") {
    const auto ac = dispersion::critical_a(kR0Max);
    REQUIRE(ac.has_value());
    CHECK_THAT(*ac, WithinAbs(3.4454, 1e-3));
  }
  SECTION("contact-only never destabilizes") {
    CHECK_FALSE(dispersion::critical_a(0.0).has_value());
    CHECK_FALSE(dispersion::critical_a(0.5).has_value());
  }
  SECTION("weaker DDI needs larger A") {
    const auto ac = dispersion::critical_a(1.0);
    REQUIRE(ac.has_value());
    CHECK(*ac > 3.4454);
    CHECK_THAT(*ac, WithinAbs(23.911, 0.05));
  }
  SECTION("domain errors") {
    CHECK_THROWS_AS(dispersion::critical_a(-0.1), std::domain_error);
    CHECK_THROWS_AS(dispersion::critical_a(1.3), std::domain_error);
  }
}

TEST_CASE("stability flips across critical_a") {
  for (const double r0 : {0.9, 1.0, kR0Max}) {
    const auto ac = dispersion::critical_a(r0);
    REQUIRE(ac.has_value());
    const double eps = std::max(1e-3, 3e-4 * *ac);
    CHECK(dispersion::analyze_roton({r0, *ac - eps}).stable);
    CHECK_FALSE(dispersion::analyze_roton({r0, *ac + eps}).stable);
  }
}

TEST_CASE("CondensateParams validation") {
  CHECK_THROWS_AS((CondensateParams{-0.1, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((CondensateParams{1.3, 1.0}.validate()), std::domain_error);
  CHECK_THROWS_AS((CondensateParams{0.5, 0.0}.validate()), std::domain_error);
  CHECK_NOTHROW((CondensateParams{kR0Max, 0.5}.validate()));
}
