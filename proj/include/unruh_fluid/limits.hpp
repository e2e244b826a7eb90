#pragma once

// Closed-form and asymptotic limits of the mode-sum rate:
//
//  * P0 (Lorentz-invariant limit, M~ -> infinity, v < f_c), in units
//    Gamma_0 = g_-^2 rho0 / (2 hbar M* R^2):
//      P0 = (1/gamma) sum_{m >= m_min} (m v - E~/gamma)^2 J_m^2(m v - E~/gamma).
//    Conversion to the mode-sum (Fig.-2) unit g_-^2 rho0 m_B/(2 hbar^3) is
//    exactly 1/M~^2.
//  * Delta P (low-energy Lorentz-violation correction, v > f_c):
//      (1/(pi gamma)) int_{zeta_-}^{zeta_+} dz z / (f sqrt(v^2 - f^2)),
//    f(zeta_pm) = v; inverse-square-root endpoints removed by z = zeta_pm -+ u^2.
//  * Ultrarelativistic thermal forms (printed closed forms of the
//    truncated-kernel derivation; see the ratio/temperature ops).

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/quadrature.hpp"
#include "unruh_fluid/response.hpp"
#include "unruh_fluid/specfun.hpp"
#include "unruh_fluid/units.hpp"

namespace unruh_fluid::limits {

struct LiLimitResult {
  double p0 = 0.0;       // in Gamma_0 units
  double delta_p = 0.0;  // in g_-^2 rho0 m_B/(2 hbar^3) units; 0 when v <= f_c
  std::optional<double> zeta_minus;
  std::optional<double> zeta_plus;
};

// Eq.-(8)-type massless response; independent of M~ and of the condensate
// parameters. Same m_min convention and truncation certificate as the
// mode sum.
inline double p0_rate(const response::DetectorOrbit& orbit,
                      double rel_tol = 1e-8) {
  orbit.validate();
  const double gamma = orbit.gamma();
  const double v = orbit.v;
  const double e_over_gamma = orbit.e_tilde / gamma;
  const long long m_min = response::min_harmonic(orbit);

  double sum = 0.0, comp = 0.0;
  int consecutive_small = 0;
  for (long long m = m_min;; ++m) {
    if (m - m_min > response::kMaxHarmonics)
      throw TruncationError(m_min, m, sum / gamma, 0.0);
    const double x = static_cast<double>(m) * v - e_over_gamma;
    const double term = x * x * specfun::bessel_j_sq(m, x);
    response::detail::kahan_add(sum, comp, term);

    const bool small = term <= (rel_tol / 40.0) * sum + 1e-320;
    consecutive_small = small ? consecutive_small + 1 : 0;
    if (consecutive_small < 40 || m + 1 <= 0) continue;
    const double nu =
        v + std::max(0.0, -e_over_gamma) / static_cast<double>(m + 1);
    const double tail =
        std::exp(response::detail::log_tail_bound(m, nu, 1.0, 1.0, 1.0));
    if ((sum > 0.0 && tail <= rel_tol * sum) || (sum == 0.0 && tail <= 1e-300))
      return sum / gamma;
  }
}

// Critical orbital speed v_c = f_c = inf f; 1 when the spectrum has no
// interior minimum (superluminal R0 = 0 case).
inline double critical_velocity(const dispersion::CondensateParams& p) {
  const auto info = dispersion::analyze_roton(p);
  if (!info.stable)
    throw InstabilityError(info.zeta_c.value_or(0.0), -1.0);
  return info.f_c;
}

namespace detail {

template <class D>
double crossing(const D& disp, double v, double a, double b) {
  const double fa = disp.f(a) - v, fb = disp.f(b) - v;
  if (fa * fb > 0.0)
    throw std::domain_error("delta_p_correction: no bracket for f(zeta) = v in [" +
                            std::to_string(a) + ", " + std::to_string(b) + "]");
  return dispersion::detail::brent(
      [&](double z) { return disp.f(z) - v; }, a, b, fa, fb);
}

}  // namespace detail

// Correction Delta P for v > f_c, in the mode-sum (Fig.-2) unit, including
// the extra 1/pi. Returns 0 for v <= f_c. zeta_pm optionally reported.
inline double delta_p_correction(const dispersion::CondensateParams& p,
                                 const response::DetectorOrbit& orbit,
                                 double rel_tol = 1e-8,
                                 std::optional<double>* zeta_minus = nullptr,
                                 std::optional<double>* zeta_plus = nullptr) {
  orbit.validate();
  const dispersion::BogoliubovDispersion disp(p);
  const auto an = dispersion::detail::analyze_dispersion(disp);
  if (!an.stable) throw InstabilityError(an.zeta_c, an.min_f_squared);
  const double v = orbit.v;
  if (!an.has_interior_min || v <= an.f_c) return 0.0;

  const double zc = an.zeta_c;
  const double zm = detail::crossing(disp, v, 1e-12, zc);
  double hi = zc + 1.0;
  int guard = 0;
  while (disp.f(hi) < v && ++guard < 64) hi *= 2.0;  // f ~ zeta/2 closes the bracket
  const double zp = detail::crossing(disp, v, zc, hi);
  if (zeta_minus) *zeta_minus = zm;
  if (zeta_plus) *zeta_plus = zp;

  // substitute z = zm + u^2 (left) and z = zp - u^2 (right); split at zeta_c
  const auto integrand = [&](double z, double edge_z, double u) {
    const double ff = disp.f(z);
    double df = (v - ff) * (v + ff);
    if (df <= 0.0) {  // endpoint rounding: v^2 - f^2 ~ |(f^2)'| u^2
      df = std::abs(disp.f_squared_prime(edge_z)) * u * u;
      if (df <= 0.0) return 0.0;
    }
    return 2.0 * u * z / (ff * std::sqrt(df));
  };
  const double left = quadrature::integrate(
      [&](double u) { return integrand(zm + u * u, zm, u); }, 0.0,
      std::sqrt(zc - zm), 0.5 * rel_tol);
  const double right = quadrature::integrate(
      [&](double u) { return integrand(zp - u * u, zp, u); }, 0.0,
      std::sqrt(zp - zc), 0.5 * rel_tol);
  return (left + right) / (std::numbers::pi * orbit.gamma());
}

inline LiLimitResult li_limit(const dispersion::CondensateParams& p,
                              const response::DetectorOrbit& orbit,
                              double rel_tol = 1e-8) {
  LiLimitResult out;
  out.p0 = p0_rate(orbit, rel_tol);
  out.delta_p =
      delta_p_correction(p, orbit, rel_tol, &out.zeta_minus, &out.zeta_plus);
  return out;
}

// Equilibrium upper/lower population ratio of the printed ultrarelativistic
// closed form, y = c0 omega0 / a:  (12/5) y^2 exp(-sqrt(24/5) y).
inline double ultrarelativistic_ratio(double omega0_over_a_c0) {
  if (!(omega0_over_a_c0 > 0.0) || !std::isfinite(omega0_over_a_c0))
    throw std::domain_error("ultrarelativistic_ratio: require c0 omega0/a > 0");
  const double y = omega0_over_a_c0;
  return 2.4 * y * y * std::exp(-std::sqrt(4.8) * y);
}

// T_eff = sqrt(5) hbar a / (2 sqrt(6) k_B c0), in Kelvin; a factor
// pi sqrt(5/6) above the linear-acceleration Unruh temperature.
inline double t_eff_circular(double accel, double c0) {
  if (!(accel > 0.0) || !(c0 > 0.0))
    throw std::domain_error("t_eff_circular: require a > 0 and c0 > 0");
  return std::sqrt(5.0) * units::constants::hbar * accel /
         (2.0 * std::sqrt(6.0) * units::constants::k_boltzmann * c0);
}

// Bracket of the closed-form rate, y = c0 omega0 / a (signed):
//   1 - exp(-sqrt(24/5) y) + (12/5) y^2.
// Negative y (de-excitation channel) makes the bracket negative at any |y|;
// ratio checks should use magnitudes.
inline double closed_form_bracket(double y) {
  return 1.0 - std::exp(-std::sqrt(4.8) * y) + 2.4 * y * y;
}

// Printed ultrarelativistic closed form of the rate,
//   (5 g_-^2 rho0 / (96 sqrt(2 pi) hbar m_B c0^6)) (3 gamma^2 - 1) a^2 [bracket],
// evaluated exactly as written for any gamma > 1 (asymptotic for gamma >> 1).
inline double closed_form_rate_li(double gamma, double accel, double omega0,
                                  double c0, double g_minus, double rho0,
                                  double m_b) {
  if (!(gamma > 1.0) || !(accel > 0.0) || !(c0 > 0.0) || !(rho0 > 0.0) ||
      !(m_b > 0.0))
    throw std::domain_error("closed_form_rate_li: non-physical inputs");
  const double pref =
      5.0 * g_minus * g_minus * rho0 /
      (96.0 * std::sqrt(2.0 * std::numbers::pi) * units::constants::hbar *
       m_b * std::pow(c0, 6));
  return pref * (3.0 * gamma * gamma - 1.0) * accel * accel *
         closed_form_bracket(c0 * omega0 / accel);
}

}  // namespace unruh_fluid::limits
