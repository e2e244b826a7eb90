#pragma once

// Mode-sum transition rate of a circularly moving detector coupled to the
// Bogoliubov density fluctuations. With roots zeta_m of
//
//   zeta f(zeta) = (m v - E~/gamma) / M~   (target t_m, one per monotone branch)
//
// the excitation rate in units g_-^2 rho0 m_B / (2 hbar^3) is
//
//   P = (1/gamma) sum_{m >= m_min} sum_{roots} [zeta^2/f(zeta)] / |(zeta f)'| J_m^2(M~ zeta),
//
// m_min the smallest integer with m v - E~/gamma > 0. De-excitation is the
// same sum with E~ negated (negative harmonics then contribute). The delta
// composition rule generalizes the monotone case to folded (multi-root)
// spectra; roots with (zeta f)' ~ 0 (van Hove points) are excluded inside a
// tiny window and flagged instead of regularized.
//
// Truncation: the sum stops once 40 consecutive terms carry relative mass
// below rel_tol AND an evanescent-envelope certificate bounds the remaining
// tail below rel_tol. The certificate uses J_m(m z) <= e^{m(tanh a - a)} /
// sqrt(2 pi m tanh a) with z = sech a, valid once every future Bessel argument
// is below its order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/specfun.hpp"

namespace unruh_fluid::response {

inline constexpr long long kMaxHarmonics = 10'000'000;
inline constexpr double kRateUnderflowFloor = 1e-280;
inline constexpr double kVanHoveSlopeTol = 1e-8;
inline constexpr double kVanHoveZetaWindow = 1e-6;

struct DetectorOrbit {
  double m_tilde = 1.0;  // R M* / (hbar c0) > 0
  double e_tilde = 1.0;  // R omega0 / c0; > 0 excitation, < 0 de-excitation
  double v = 0.5;        // R Omega / c0 in (0, 1)

  double gamma() const { return 1.0 / std::sqrt((1.0 - v) * (1.0 + v)); }

  void validate() const {
    if (!std::isfinite(v) || !(v > 0.0) || !(v < 1.0))
      throw std::domain_error("DetectorOrbit: require 0 < v < 1, got " +
                              std::to_string(v));
    if (!std::isfinite(m_tilde) || !(m_tilde > 0.0))
      throw std::domain_error("DetectorOrbit: require m_tilde > 0");
    if (!std::isfinite(e_tilde))
      throw std::domain_error("DetectorOrbit: e_tilde must be finite");
  }
};

struct DeltaRoot {
  double zeta;
  double zf_prime;
};

struct RateResult {
  double value = 0.0;  // in units g_-^2 rho0 m_B / (2 hbar^3)
  long long m_min = 0;
  long long m_used = 0;
  double tail_bound = 0.0;
  bool multi_root = false;
  bool near_singular = false;
};

enum class TemperatureStatus { ok, underflow, undefined };

struct TemperaturePoint {
  double v = 0.0;
  double omega0 = 0.0;       // in units M*/hbar
  double temperature = 0.0;  // in units M*/k_B; 0 unless status == ok
  TemperatureStatus status = TemperatureStatus::ok;
};

// Smallest m with m v - E~/gamma > 0. The paper's ceil(E~/(v gamma)) lower
// limit coincides except when E~/(v gamma) is an exact integer, where that m
// gives target 0 (a zero-weight root), hence floor + 1 unconditionally.
inline long long min_harmonic(const DetectorOrbit& orbit) {
  return static_cast<long long>(
             std::floor(orbit.e_tilde / (orbit.v * orbit.gamma()))) +
         1;
}

// Finds all roots of zeta f(zeta) = target by bracketed Brent iteration on
// the monotone segments between stationary points of zeta f.
template <class D>
class DeltaRootSolver {
 public:
  DeltaRootSolver(const D& disp, const dispersion::detail::DispersionAnalysis& an)
      : disp_(disp), stationary_(an.zf_stationary) {
    g_stationary_.reserve(stationary_.size());
    for (double zs : stationary_) g_stationary_.push_back(disp_.zf(zs));
  }

  const std::vector<double>& stationary() const { return stationary_; }

  void solve(double target, std::vector<DeltaRoot>& out) const {
    out.clear();
    if (!(target > 0.0)) return;  // the zeta = 0 root carries zero weight

    if constexpr (requires(const D& d) { d.exact_zf_inverse(target); }) {
      const double z = disp_.exact_zf_inverse(target);
      out.push_back({z, disp_.zf_prime(z)});
      return;
    } else {
      double lo = 0.0, glo = 0.0;
      for (std::size_t i = 0; i < stationary_.size(); ++i) {
        refine_segment(lo, stationary_[i], glo, g_stationary_[i], target, out);
        lo = stationary_[i];
        glo = g_stationary_[i];
      }
      double hi = std::max(2.2 * std::sqrt(2.0 * target) + 1.0, lo + 1.0);
      double ghi = disp_.zf(hi);
      int guard = 0;
      while (ghi < target && ++guard < 64) {
        hi *= 2.0;
        ghi = disp_.zf(hi);
      }
      refine_segment(lo, hi, glo, ghi, target, out);
    }
  }

 private:
  void refine_segment(double a, double b, double ga, double gb, double target,
                      std::vector<DeltaRoot>& out) const {
    const double ha = ga - target, hb = gb - target;
    if (ha == 0.0 && a > 0.0) {
      out.push_back({a, disp_.zf_prime(a)});
      return;
    }
    if (ha * hb >= 0.0) return;
    const double z = dispersion::detail::brent(
        [&](double zz) { return disp_.zf(zz) - target; }, a, b, ha, hb);
    out.push_back({z, disp_.zf_prime(z)});
  }

  const D& disp_;
  std::vector<double> stationary_;
  std::vector<double> g_stationary_;
};

namespace detail {

// Geometric-envelope bound on sum_{m > M} m q^m-type Bessel tails, in logs.
// nu bounds the effective velocity (x_m <= m nu / f_lb for all m > M).
inline double log_tail_bound(long long m_last, double nu, double f_lb,
                             double zf_lb, double m_tilde) {
  const double z_star = nu / f_lb;
  if (!(z_star < 1.0 - 1e-9) || !(zf_lb > 0.0)) return 700.0;  // no certificate
  const double th = std::sqrt((1.0 - z_star) * (1.0 + z_star));
  const double alpha = std::log((1.0 + th) / z_star);
  const double lam = th - alpha;  // < 0
  const double q = std::exp(2.0 * lam);
  const double M = static_cast<double>(m_last);
  const double ln_c = 2.0 * std::log(nu) - 2.0 * std::log(m_tilde) -
                      3.0 * std::log(f_lb) - std::log(zf_lb) -
                      std::log(2.0 * std::numbers::pi * th);
  double ln_tail = ln_c + (M + 1.0) * 2.0 * lam +
                   std::log((M + 1.0) - M * q) - 2.0 * std::log1p(-q);
  return std::min(ln_tail, 700.0);
}

inline void kahan_add(double& sum, double& comp, double term) {
  const double y = term - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

}  // namespace detail

// All roots of zeta f(zeta) = target for stable parameters, ascending.
inline std::vector<DeltaRoot> solve_delta_roots(
    const dispersion::CondensateParams& p, double target) {
  if (!(target >= 0.0) || !std::isfinite(target))
    throw std::domain_error("solve_delta_roots: require finite target >= 0");
  const dispersion::BogoliubovDispersion disp(p);
  const auto an = dispersion::detail::analyze_dispersion(disp);
  if (!an.stable) throw InstabilityError(an.zeta_c, an.min_f_squared);
  DeltaRootSolver<dispersion::BogoliubovDispersion> solver(disp, an);
  std::vector<DeltaRoot> out;
  solver.solve(target, out);
  return out;
}

template <class D>
RateResult transition_rate(const D& disp, const DetectorOrbit& orbit,
                           double rel_tol = 1e-8) {
  orbit.validate();
  if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::domain_error("transition_rate: rel_tol out of (0, 1)");

  const auto an = dispersion::detail::analyze_dispersion(disp);
  if (!an.stable)
    throw InstabilityError(an.has_interior_min ? an.zeta_c : 0.0,
                           an.min_f_squared);
  const DeltaRootSolver<D> solver(disp, an);
  const double last_stationary =
      an.zf_stationary.empty() ? 0.0 : an.zf_stationary.back();

  const double gamma = orbit.gamma();
  const double v = orbit.v;
  const double e_over_gamma = orbit.e_tilde / gamma;
  const double m_tilde = orbit.m_tilde;

  RateResult res;
  res.m_min = min_harmonic(orbit);

  double sum = 0.0, comp = 0.0;
  int consecutive_small = 0;
  std::vector<DeltaRoot> roots;

  for (long long m = res.m_min;; ++m) {
    if (m - res.m_min > kMaxHarmonics)
      throw TruncationError(res.m_min, m, sum / gamma, res.tail_bound);

    const double target = (static_cast<double>(m) * v - e_over_gamma) / m_tilde;
    solver.solve(target, roots);

    double term = 0.0;
    double z_first = 0.0;
    for (const auto& r : roots) {
      bool skip = std::abs(r.zf_prime) < kVanHoveSlopeTol;
      for (double zs : solver.stationary())
        skip = skip || std::abs(r.zeta - zs) < kVanHoveZetaWindow;
      if (skip) {
        res.near_singular = true;
        continue;
      }
      if (z_first == 0.0) z_first = r.zeta;
      const double ff = disp.f(r.zeta);
      term += (r.zeta * r.zeta / ff) / std::abs(r.zf_prime) *
              specfun::bessel_j_sq(m, m_tilde * r.zeta);
    }
    if (roots.size() > 1) res.multi_root = true;
    detail::kahan_add(sum, comp, term);
    res.m_used = m;

    const bool small = term <= (rel_tol / 40.0) * sum + 1e-320;
    consecutive_small = small ? consecutive_small + 1 : 0;
    if (consecutive_small < 40 || m + 1 <= 0) continue;

    // Tail certificate. Future roots lie at zeta >= z_first; bound
    // f and (zeta f)' from below over that tail.
    double f_lb = 0.0, zf_lb = 0.0;
    if (z_first > 0.0 &&
        z_first >= std::max(an.has_interior_min ? an.zeta_c : 0.0,
                            last_stationary)) {
      f_lb = disp.f(z_first);  // f non-decreasing past the roton and folds
      zf_lb = f_lb;
    } else if (an.zf_monotone) {
      f_lb = an.has_interior_min ? an.f_c : 1.0;
      zf_lb = an.zf_prime_lb;
    } else {
      continue;  // still inside/ahead of a fold: no certificate yet
    }
    const double nu =
        v + std::max(0.0, -e_over_gamma) / static_cast<double>(m + 1);
    const double ln_tail =
        detail::log_tail_bound(m, nu, f_lb, zf_lb, m_tilde);
    const double tail = std::exp(ln_tail);
    if (sum > 0.0 && tail <= rel_tol * sum) {
      res.tail_bound = tail / sum;
      break;
    }
    if (sum == 0.0 && tail <= 1e-300) {
      res.tail_bound = 0.0;
      break;
    }
  }

  res.value = sum / gamma;
  return res;
}

inline RateResult transition_rate(const dispersion::CondensateParams& p,
                                  const DetectorOrbit& orbit,
                                  double rel_tol = 1e-8) {
  return transition_rate(dispersion::BogoliubovDispersion(p), orbit, rel_tol);
}

// Detailed-balance temperature T = (hbar omega0 / k_B) / ln(P(-omega0)/P(omega0)),
// reported in units M*/k_B with omega0 = (E~/M~) M*/hbar. Negative values are
// physical (inverted occupation); underflowing or equal rates are flagged in
// status instead of producing NaN/inf.
template <class D>
TemperaturePoint detailed_balance_temperature(const D& disp,
                                              const DetectorOrbit& orbit,
                                              double rel_tol = 1e-8) {
  if (!(orbit.e_tilde > 0.0))
    throw std::domain_error(
        "detailed_balance_temperature: gap e_tilde must be > 0");
  const RateResult up = transition_rate(disp, orbit, rel_tol);
  DetectorOrbit mirrored = orbit;
  mirrored.e_tilde = -orbit.e_tilde;
  const RateResult down = transition_rate(disp, mirrored, rel_tol);

  TemperaturePoint tp;
  tp.v = orbit.v;
  tp.omega0 = orbit.e_tilde / orbit.m_tilde;
  if (up.value < kRateUnderflowFloor || down.value < kRateUnderflowFloor) {
    tp.status = TemperatureStatus::underflow;
    return tp;
  }
  const double ratio = down.value / up.value;
  if (std::abs(ratio - 1.0) <= rel_tol) {
    tp.status = TemperatureStatus::undefined;
    return tp;
  }
  tp.temperature = tp.omega0 / std::log(ratio);
  tp.status = TemperatureStatus::ok;
  return tp;
}

inline TemperaturePoint detailed_balance_temperature(
    const dispersion::CondensateParams& p, const DetectorOrbit& orbit,
    double rel_tol = 1e-8) {
  return detailed_balance_temperature(dispersion::BogoliubovDispersion(p),
                                      orbit, rel_tol);
}

}  // namespace unruh_fluid::response
