#pragma once

// Special functions backing the dispersion and the mode sums:
//   scaled_erfc(x) = w[x] = exp(x^2) erfc(x)
//   bessel_j(m, x) = J_m(x), integer order, stable for m >> x and m ~ x.
//
// J_m is evaluated through GSL (gsl_sf_bessel_Jn), which switches between
// Taylor, recurrence and Olver uniform asymptotics; that covers the
// order ~ argument transition region up to |m|, x <= 1e6 at ~1e-13 relative.
// w[x] is computed here: exp(x^2)*erfc(x) below x = 13 and the asymptotic
// series 1/(sqrt(pi) x) * sum_k (-1)^k (2k-1)!!/(2x^2)^k above, so the
// large-x path never forms exp(x^2) or erfc(x) separately (erfc underflows
// near x = 27 while w stays O(1/x)).

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

namespace unruh_fluid::specfun {

inline constexpr double kBesselOrderMax = 1e6;
inline constexpr double kBesselArgMax = 1e6;

// Default relative tolerance contract for this module's outputs.
struct Accuracy {
  double rel_tol = 1e-12;

  void validate() const {
    if (!(rel_tol > 0.0) || !(rel_tol < 1e-6))
      throw std::domain_error("Accuracy.rel_tol must lie in (0, 1e-6)");
  }
};

namespace detail {

inline void gsl_quiet() {
  static const bool done = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)done;
}

// log of the evanescent-order bound  J_m(m z) <= e^{m(tanh a - a)} / sqrt(2 pi m tanh a),
// z = sech a in (0, 1), m > 0  (DLMF 10.14.17 form). Used by the mode-sum
// truncation certificates.
inline double log_evanescent_envelope(double m, double z) {
  const double th = std::sqrt((1.0 - z) * (1.0 + z));  // tanh a
  const double a = std::log((1.0 + th) / z);           // a = arcsech z
  return m * (th - a) - 0.5 * std::log(2.0 * std::numbers::pi * m * th);
}

}  // namespace detail

// w[x] = exp(x^2) erfc(x) for x >= 0. Positive, strictly decreasing,
// w(0) = 1, w ~ 1/(sqrt(pi) x) at large x. Relative error <= ~1e-13.
inline double scaled_erfc(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("scaled_erfc: require finite x >= 0, got " +
                            std::to_string(x));
  if (x < 13.0) return std::exp(x * x) * std::erfc(x);

  // asymptotic series; terms fall below 1e-16 within ~12 terms for x >= 13
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 20; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
    if (std::abs(term) < 1e-17 * sum) break;
  }
  return sum / (std::numbers::sqrt2 * std::sqrt(std::numbers::pi / 2.0) * x);
}

// J_m(x), integer m. Satisfies J_{-m}(x) = (-1)^m J_m(x). Values below the
// double-precision floor (deep evanescent regime) are returned as 0.
inline double bessel_j(long long m, double x) {
  if (!(std::isfinite(x)) || x < 0.0 || x > kBesselArgMax)
    throw std::domain_error("bessel_j: require 0 <= x <= 1e6, got " +
                            std::to_string(x));
  if (std::llabs(m) > static_cast<long long>(kBesselOrderMax))
    throw std::domain_error("bessel_j: require |m| <= 1e6, got " +
                            std::to_string(m));
  detail::gsl_quiet();

  double sign = 1.0;
  if (m < 0) {
    m = -m;
    if (m & 1) sign = -1.0;
  }
  if (m > 0 && x == 0.0) return 0.0;

  // gsl_sf_bessel_Jn sporadically yields NaN for some very large integer
  // orders; the fractional-order entry point is robust there, so use it for
  // m >= 3 and fall back to the other routine on a non-finite result.
  gsl_sf_result r;
  int status;
  if (m <= 2) {
    status = gsl_sf_bessel_Jn_e(static_cast<int>(m), x, &r);
    if (status == GSL_SUCCESS && !std::isfinite(r.val))
      status = gsl_sf_bessel_Jnu_e(static_cast<double>(m), x, &r);
  } else {
    status = gsl_sf_bessel_Jnu_e(static_cast<double>(m), x, &r);
    if (status == GSL_SUCCESS && !std::isfinite(r.val))
      status = gsl_sf_bessel_Jn_e(static_cast<int>(m), x, &r);
  }
  if (status == GSL_EUNDRFLW) return 0.0;
  if (status != GSL_SUCCESS || !std::isfinite(r.val))
    throw std::runtime_error(std::string("bessel_j(") + std::to_string(m) +
                             ", " + std::to_string(x) +
                             "): gsl failure: " + gsl_strerror(status));
  return sign * r.val;
}

// J_m(x)^2; never negative.
inline double bessel_j_sq(long long m, double x) {
  const double j = bessel_j(m, x);
  return j * j;
}

}  // namespace unruh_fluid::specfun
