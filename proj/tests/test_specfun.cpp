#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "unruh_fluid/specfun.hpp"

using namespace unruh_fluid;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Test-side oracle for w(x) = exp(x^2) erfc(x), independent of the library
// path: Maclaurin erf series below x = 2, A&S 7.1.14 continued fraction
// (coefficients k/2) above, both in long double.
long double w_oracle(long double x) {
  const long double sqrt_pi = 1.7724538509055160272981674833411452L;
  if (x < 2.0L) {
    long double term = x, erf = x;
    for (int n = 1; n < 200; ++n) {
      term *= -x * x / n;
      const long double add = term / (2 * n + 1);
      erf += add;
      if (std::abs(add) < 1e-22L * std::abs(erf)) break;
    }
    erf *= 2.0L / sqrt_pi;
    return std::exp(x * x) * (1.0L - erf);
  }
  long double cf = x;
  for (int k = 300; k >= 1; --k) cf = x + (0.5L * k) / cf;
  return 1.0L / (sqrt_pi * cf);
}

// Ascending power series for J_m(x); adequate for small m and x.
long double bessel_series(int m, long double x) {
  long double term = 1.0L;
  for (int i = 1; i <= m; ++i) term *= (x / 2) / i;
  long double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= -(x / 2) * (x / 2) / (static_cast<long double>(k) * (m + k));
    sum += term;
    if (std::abs(term) < 1e-25L * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("scaled_erfc examples") {
  CHECK(specfun::scaled_erfc(0.0) == 1.0);
  CHECK_THAT(specfun::scaled_erfc(1.0), WithinAbs(0.427584, 1e-6));
  CHECK_THAT(specfun::scaled_erfc(1.0),
             WithinRel(0.42758357615580700441, 1e-12));
  // asymptotic-expansion oracle from the contract
  const double asym = 1.0 / (std::sqrt(std::numbers::pi) * 10.0) *
                      (1.0 - 1.0 / 200.0 + 3.0 / 4e4);
  CHECK_THAT(specfun::scaled_erfc(10.0), WithinAbs(asym, 1e-5));
  CHECK_THAT(specfun::scaled_erfc(10.0),
             WithinRel(0.05614099274382258586, 1e-12));
}

TEST_CASE("scaled_erfc matches the long-double oracle over the full range") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> expo(-4.0, 2.3);  // x up to ~200
  for (int i = 0; i < 400; ++i) {
    const double x = std::pow(10.0, expo(rng));
    const double ref = static_cast<double>(w_oracle(x));
    CHECK_THAT(specfun::scaled_erfc(x), WithinRel(ref, 1e-12));
  }
  // crossover region between exp*erfc and the asymptotic series
  for (double x = 11.0; x < 16.0; x += 0.25)
    CHECK_THAT(specfun::scaled_erfc(x),
               WithinRel(static_cast<double>(w_oracle(x)), 1e-13));
}

TEST_CASE("scaled_erfc is strictly decreasing and obeys the sharp bounds") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  double prev = specfun::scaled_erfc(0.0);
  CHECK(prev == 1.0);
  for (double x = 0.05; x < 40.0; x *= 1.17) {
    const double w = specfun::scaled_erfc(x);
    CHECK(w < prev);
    CHECK(w <= 1.0);
    CHECK(w > 2.0 / (sqrt_pi * (x + std::sqrt(x * x + 2.0))));
    CHECK(w <= 2.0 / (sqrt_pi * (x + std::sqrt(x * x + 4.0 / std::numbers::pi))));
    prev = w;
  }
}

TEST_CASE("scaled_erfc domain errors") {
  CHECK_THROWS_AS(specfun::scaled_erfc(-1e-12), std::domain_error);
  CHECK_THROWS_AS(specfun::scaled_erfc(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(
      specfun::scaled_erfc(std::numeric_limits<double>::infinity()),
      std::domain_error);
}

TEST_CASE("bessel_j examples") {
  CHECK(specfun::bessel_j(0, 0.0) == 1.0);
  CHECK_THAT(specfun::bessel_j(1, 1.0), WithinAbs(0.4400505857, 1e-9));
  CHECK_THAT(specfun::bessel_j(1, 1.0),
             WithinRel(static_cast<double>(bessel_series(1, 1.0L)), 1e-12));
  CHECK(specfun::bessel_j(-3, 2.5) == -specfun::bessel_j(3, 2.5));

  CHECK(specfun::bessel_j_sq(0, 0.0) == 1.0);
  const double j5 = specfun::bessel_j_sq(5, 1.0);
  CHECK(j5 > 0.0);
  CHECK(j5 <= 1e-5);
  CHECK_THAT(j5, WithinRel(6.237892380026776e-8, 1e-9));
}

TEST_CASE("bessel_j matches the series oracle at small order/argument") {
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<int> morder(0, 12);
  std::uniform_real_distribution<double> xdist(0.0, 8.0);
  for (int i = 0; i < 200; ++i) {
    const int m = morder(rng);
    const double x = xdist(rng);
    const double ref = static_cast<double>(bessel_series(m, x));
    if (std::abs(ref) > 1e-250)
      CHECK_THAT(specfun::bessel_j(m, x), WithinRel(ref, 1e-10));
  }
}

TEST_CASE("bessel sum rule") {
  for (const double x : {0.5, 1.0, 10.0, 100.0}) {
    const long long m_max = static_cast<long long>(
        std::ceil(x + 40.0 * std::cbrt(x + 1.0)));
    double sum = 0.0;
    for (long long m = -m_max; m <= m_max; ++m)
      sum += specfun::bessel_j_sq(m, x);
    CHECK_THAT(sum, WithinAbs(1.0, 1e-10));
  }
}

TEST_CASE("bessel parity identity") {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<int> morder(1, 200);
  std::uniform_real_distribution<double> xdist(0.0, 300.0);
  for (int i = 0; i < 200; ++i) {
    const int m = morder(rng);
    const double x = xdist(rng);
    const double jp = specfun::bessel_j(m, x);
    const double jm = specfun::bessel_j(-m, x);
    CHECK(jm == ((m % 2) ? -jp : jp));
  }
}

TEST_CASE("bessel three-term recurrence residual") {
  std::mt19937_64 rng(74);
  std::uniform_int_distribution<int> morder(1, 1000);
  std::uniform_real_distribution<double> xdist(1.0, 1000.0);
  for (int i = 0; i < 300; ++i) {
    const int m = morder(rng);
    const double x = xdist(rng);
    const double a = specfun::bessel_j(m - 1, x);
    const double b = specfun::bessel_j(m, x);
    const double c = specfun::bessel_j(m + 1, x);
    const double resid = std::abs(a + c - (2.0 * m / x) * b);
    CHECK(resid <= 1e-8 * std::max(std::abs(a), std::abs(c)) + 1e-300);
  }
}

TEST_CASE("bessel deep-evanescent regime is clean") {
  // order >> argument: no overflow, values collapse to the underflow floor
  const double j = specfun::bessel_j(500, 1.0);
  CHECK(std::isfinite(j));
  CHECK(std::abs(j) < 1e-280);
  CHECK(specfun::bessel_j(1000000, 10.0) == 0.0);
  CHECK(std::isfinite(specfun::bessel_j(1000000, 999999.0)));
}

TEST_CASE("bessel domain errors") {
  CHECK_THROWS_AS(specfun::bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(specfun::bessel_j(0, 1.1e6), std::domain_error);
  CHECK_THROWS_AS(specfun::bessel_j(1000001, 1.0), std::domain_error);
  CHECK_THROWS_AS(specfun::bessel_j(0, std::nan("")), std::domain_error);
}

TEST_CASE("Accuracy invariants") {
  CHECK_NOTHROW(specfun::Accuracy{1e-12}.validate());
  CHECK_THROWS_AS(specfun::Accuracy{0.0}.validate(), std::domain_error);
  CHECK_THROWS_AS(specfun::Accuracy{1e-6}.validate(), std::domain_error);
}
