#pragma once

// Slow-path validators for the mode sum, used in tests and `verify` runs.
//
//  * smeared_delta_rate: direct quadrature of the rate integral with the
//    delta replaced by a normalized Gaussian N(0, sigma^2) in the zeta f
//    variable. Converges to the mode sum as sigma -> 0; no root solving.
//  * wightman_rate: windowed-Fourier-transform rate from the density-density
//    correlation function. The time integral is carried out analytically
//    against a Hann window (exchange of integration order), leaving a
//    regulated per-harmonic zeta quadrature over the window-kernel support;
//    agrees with the mode sum within an O(1/window_time) broadening
//    envelope. Direct pointwise W(T) evaluation is exposed separately.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/quadrature.hpp"
#include "unruh_fluid/response.hpp"
#include "unruh_fluid/specfun.hpp"

namespace unruh_fluid::oracle {

struct SmearingConfig {
  double sigma = 1e-3;    // Gaussian width in zeta f units
  double zeta_cut = 8.0;  // integration cutoff
  long long m_cut = 4000; // harmonic cutoff

  void validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
      throw std::domain_error("SmearingConfig: sigma must be > 0");
    if (!(zeta_cut > 0.0) || !std::isfinite(zeta_cut) || !(m_cut > 0))
      throw std::domain_error("SmearingConfig: cutoffs must be positive finite");
  }
};

namespace detail {

struct DispersionGrid {
  std::vector<double> z;
  std::vector<double> g;  // zeta f(zeta)
  double g_max = 0.0;
};

template <class D>
DispersionGrid tabulate(const D& disp, double zeta_cut, std::size_t n = 40000) {
  DispersionGrid out;
  out.z.resize(n + 1);
  out.g.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out.z[i] = zeta_cut * static_cast<double>(i) / static_cast<double>(n);
    out.g[i] = i == 0 ? 0.0 : out.z[i] * disp.f(out.z[i]);
    out.g_max = std::max(out.g_max, out.g[i]);
  }
  return out;
}

// Maximal runs of grid cells where |g - t| <= width (or a sign crossing),
// padded by one cell; returns [za, zb] pairs.
inline void find_windows(const DispersionGrid& grid, double t, double width,
                         std::vector<std::pair<double, double>>& out) {
  out.clear();
  const std::size_t n = grid.z.size() - 1;
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = grid.g[i] - t, b = grid.g[i + 1] - t;
    const bool hit =
        std::min(std::abs(a), std::abs(b)) <= width || (a > 0.0) != (b > 0.0);
    if (hit && !in_run) {
      run_start = i;
      in_run = true;
    } else if (!hit && in_run) {
      out.emplace_back(grid.z[run_start > 0 ? run_start - 1 : 0],
                       grid.z[std::min(i + 1, n)]);
      in_run = false;
    }
  }
  if (in_run)
    out.emplace_back(grid.z[run_start > 0 ? run_start - 1 : 0], grid.z[n]);
}

// Cutoff heuristic: once f(zeta) >= 3 every remaining Bessel factor is deep
// evanescent (argument/order <= v/3), independent of the root structure.
template <class D>
double default_zeta_cut(const D& disp) {
  double z = 1.0;
  for (int i = 0; i < 64 && disp.f(z) < 3.0; ++i) z *= 1.5;
  return z;
}

}  // namespace detail

template <class D>
SmearingConfig default_config(const D& disp,
                              const response::DetectorOrbit& orbit,
                              double sigma = 1e-3) {
  SmearingConfig cfg;
  cfg.sigma = sigma;
  cfg.zeta_cut = detail::default_zeta_cut(disp);
  const double g_hi = cfg.zeta_cut * disp.f(cfg.zeta_cut);
  cfg.m_cut = static_cast<long long>(
                  std::ceil((std::abs(orbit.e_tilde) / orbit.gamma() +
                             (g_hi + 12.0 * sigma) * orbit.m_tilde) /
                            orbit.v)) +
              50;
  return cfg;
}

inline SmearingConfig default_config(const dispersion::CondensateParams& p,
                                     const response::DetectorOrbit& orbit,
                                     double sigma = 1e-3) {
  return default_config(dispersion::BogoliubovDispersion(p), orbit, sigma);
}

template <class D>
double smeared_delta_rate(const D& disp, const response::DetectorOrbit& orbit,
                          const SmearingConfig& cfg) {
  orbit.validate();
  cfg.validate();
  const auto an = dispersion::detail::analyze_dispersion(disp);
  if (!an.stable) throw InstabilityError(an.zeta_c, an.min_f_squared);

  const auto grid = detail::tabulate(disp, cfg.zeta_cut);
  const double gamma = orbit.gamma();
  const double v = orbit.v;
  const double e_over_gamma = orbit.e_tilde / gamma;
  const double m_tilde = orbit.m_tilde;
  const double sigma = cfg.sigma;
  const double width = 12.0 * sigma;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));

  const long long m_lo = static_cast<long long>(
      std::ceil((e_over_gamma - width * m_tilde) / v));
  const long long m_hi_range = static_cast<long long>(
      std::floor((e_over_gamma + (grid.g_max + width) * m_tilde) / v));
  const long long m_hi = std::min(cfg.m_cut, m_hi_range);

  double total = 0.0, comp = 0.0, edge_mass = 0.0, last_m_mass = 0.0;
  std::vector<std::pair<double, double>> windows;
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double t = (static_cast<double>(m) * v - e_over_gamma) / m_tilde;
    detail::find_windows(grid, t, width, windows);
    double m_mass = 0.0;
    for (const auto& [za, zb] : windows) {
      const double mass = quadrature::integrate(
          [&](double z) {
            const double ff = disp.f(z);
            const double d = (z * ff - t) / sigma;
            if (std::abs(d) > 40.0) return 0.0;
            return z * z / ff * specfun::bessel_j_sq(m, m_tilde * z) * norm *
                   std::exp(-0.5 * d * d);
          },
          za, zb, 3e-8);
      m_mass += mass;
      if (zb >= grid.z.back()) edge_mass += std::abs(mass);
    }
    response::detail::kahan_add(total, comp, m_mass);
    if (m == m_hi) last_m_mass = std::abs(m_mass);
  }
  if (m_hi == cfg.m_cut && m_hi < m_hi_range) edge_mass += last_m_mass;
  if (total > 0.0 && edge_mass > 1e-6 * total)
    throw CutoffError("smeared_delta_rate: boundary mass " +
                      std::to_string(edge_mass / total) +
                      " of total; raise zeta_cut/m_cut");
  return total / gamma;
}

inline double smeared_delta_rate(const dispersion::CondensateParams& p,
                                 const response::DetectorOrbit& orbit,
                                 const SmearingConfig& cfg) {
  return smeared_delta_rate(dispersion::BogoliubovDispersion(p), orbit, cfg);
}

namespace detail {

// Fourier transform of the Hann window cos^2(pi T/(2 Tw)) on [-Tw, Tw]:
//   W(omega) = sin(omega Tw) pi^2 / (omega (pi^2 - omega^2 Tw^2)),
// with removable singularities at omega = 0 and omega Tw = +-pi.
inline double hann_kernel(double omega, double t_window) {
  const double x = std::abs(omega) * t_window;
  const double pi = std::numbers::pi;
  if (x < 1e-8) return t_window * (1.0 - x * x / 6.0) * pi * pi / (pi * pi - x * x);
  const double s = pi - x;
  if (std::abs(s) < 1e-7) {
    const double sinc_s = std::abs(s) < 1e-12 ? 1.0 : std::sin(s) / s;
    return t_window * pi * pi * sinc_s / (x * (pi + x));
  }
  return t_window * pi * pi * std::sin(x) / (x * (pi * pi - x * x));
}

template <class D>
double wightman_rate_eta(const D& disp, const response::DetectorOrbit& orbit,
                         double t_window, double eta) {
  const auto grid = tabulate(disp, default_zeta_cut(disp));
  const double gamma = orbit.gamma();
  const double v = orbit.v;
  const double e_over_gamma = orbit.e_tilde / gamma;
  const double m_tilde = orbit.m_tilde;

  const double omega_cut = 40.0 * std::numbers::pi / t_window;
  const double width = omega_cut / m_tilde;  // in zeta f units

  const long long m_lo = static_cast<long long>(
      std::ceil((e_over_gamma - width * m_tilde) / v));
  const long long m_hi = static_cast<long long>(
      std::floor((e_over_gamma + (grid.g_max + width) * m_tilde) / v));

  double total = 0.0, comp = 0.0;
  std::vector<std::pair<double, double>> windows;
  for (long long m = m_lo; m <= m_hi; ++m) {
    const double t = (static_cast<double>(m) * v - e_over_gamma) / m_tilde;
    find_windows(grid, t, width, windows);
    for (const auto& [za, zb] : windows) {
      const double mass = quadrature::integrate(
          [&](double z) {
            const double ff = disp.f(z);
            const double omega = m_tilde * (t - z * ff);
            if (std::abs(omega) > omega_cut) return 0.0;
            return 0.5 * z * z / ff * std::exp(-eta * z) *
                   specfun::bessel_j_sq(m, m_tilde * z) *
                   hann_kernel(omega, t_window);
          },
          za, zb, 3e-8);
      response::detail::kahan_add(total, comp, mass);
    }
  }
  return total * m_tilde / (std::numbers::pi * gamma);
}

}  // namespace detail

// Windowed-FT rate at -omega0. window_time is the half-width T_w of the Hann
// window in dimensionless proper time (units R/(gamma c0)); one orbital
// period is 2 pi / v. The exp(-eta zeta) regulator is extrapolated to
// eta -> 0 from {eta, eta/2} (Richardson). Qualitative cross-validation only:
// resolution envelope is O(1/window_time).
template <class D>
double wightman_rate(const D& disp, const response::DetectorOrbit& orbit,
                     double window_time, double eta = 1e-3) {
  orbit.validate();
  if (!(window_time > 0.0) || !std::isfinite(window_time))
    throw std::domain_error("wightman_rate: require window_time > 0");
  if (!(eta > 0.0)) throw std::domain_error("wightman_rate: require eta > 0");
  const auto an = dispersion::detail::analyze_dispersion(disp);
  if (!an.stable) throw InstabilityError(an.zeta_c, an.min_f_squared);
  const double i1 = detail::wightman_rate_eta(disp, orbit, window_time, eta);
  const double i2 = detail::wightman_rate_eta(disp, orbit, window_time, 0.5 * eta);
  return 2.0 * i2 - i1;
}

inline double wightman_rate(const dispersion::CondensateParams& p,
                            const response::DetectorOrbit& orbit,
                            double window_time, double eta = 1e-3) {
  return wightman_rate(dispersion::BogoliubovDispersion(p), orbit, window_time,
                       eta);
}

// Pointwise regulated correlation kernel
//   K(T) = int_0^zeta_max dz (z^2 / 2 f) e^{-eta z} J_0(2 M~ z |sin(v T/2)|)
//          e^{-i M~ z f T},
// T in the same dimensionless proper-time units as wightman_rate. Hermiticity
// K(-T) = conj K(T) is inherited from the integrand.
template <class D>
std::complex<double> wightman_correlation(const D& disp, double m_tilde,
                                          double v, double T,
                                          double eta = 1e-3,
                                          double zeta_max = 20.0) {
  if (!(m_tilde > 0.0) || !(v > 0.0) || !(v < 1.0))
    throw std::domain_error("wightman_correlation: invalid m_tilde or v");
  const double s = std::abs(std::sin(0.5 * v * T));
  const auto part = [&](bool real_part) {
    return quadrature::integrate(
        [&](double z) {
          const double ff = disp.f(z);
          const double amp = 0.5 * z * z / ff * std::exp(-eta * z) *
                             specfun::bessel_j(0, 2.0 * m_tilde * z * s);
          const double phase = -m_tilde * z * ff * T;
          return amp * (real_part ? std::cos(phase) : std::sin(phase));
        },
        0.0, zeta_max, 1e-9);
  };
  return {part(true), part(false)};
}

}  // namespace unruh_fluid::oracle
