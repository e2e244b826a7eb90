#pragma once

// Quasi-2D dipolar Bogoliubov dispersion
//
//   omega_k = c0 k f(zeta),   zeta = hbar c0 k / M*,
//   f^2(zeta) = 1 - (3 R0/2) sqrt(A) zeta w[sqrt(A/2) zeta] + zeta^2/4,
//
// with w[x] = exp(x^2) erfc(x). R0 in [0, sqrt(pi/2)] measures DDI vs contact
// strength, A the effective chemical potential relative to the transverse
// trapping. For R0 > 0 the spectrum develops an interior (roton) minimum
// f_c = f(zeta_c); f^2 turns negative above a critical A_c(R0) and the
// spectrum is unstable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/specfun.hpp"

namespace unruh_fluid::dispersion {

inline double r0_max() { return std::sqrt(std::numbers::pi / 2.0); }

struct CondensateParams {
  double r0 = 0.0;      // DDI ratio R0 in [0, sqrt(pi/2)]
  double a_chem = 1.0;  // effective chemical potential A > 0

  void validate() const {
    if (!std::isfinite(r0) || r0 < 0.0 || r0 > r0_max() * (1.0 + 1e-12))
      throw std::domain_error("CondensateParams: R0 must lie in [0, sqrt(pi/2)], got " +
                              std::to_string(r0));
    if (!std::isfinite(a_chem) || !(a_chem > 0.0))
      throw std::domain_error("CondensateParams: A must be > 0, got " +
                              std::to_string(a_chem));
  }
};

struct RotonInfo {
  bool stable = true;                 // f^2 > 0 for all zeta > 0
  std::optional<double> zeta_c;       // location of the interior minimum of f
  double f_c = 1.0;                   // inf f(zeta); 0 when unstable
  bool zf_monotone = true;            // (zeta f)' > 0 for all zeta > 0
};

namespace detail {

// Bracketed Brent root finder; f(a) and f(b) must have opposite signs.
template <class F>
double brent(F&& fn, double a, double b, double fa, double fb,
             double xtol = 0.0, int max_iter = 200) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) +
                       0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol || fb == 0.0) return b;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc; r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (xm > 0.0 ? tol : -tol);
    fb = fn(b);
  }
  return b;
}

}  // namespace detail

// Dispersion evaluated from condensate parameters. Small value type, pure.
class BogoliubovDispersion {
 public:
  explicit BogoliubovDispersion(const CondensateParams& p) : p_(p) {
    p_.validate();
    coef_ = 1.5 * p_.r0 * std::sqrt(p_.a_chem);
    xfac_ = std::sqrt(0.5 * p_.a_chem);
  }

  const CondensateParams& params() const { return p_; }

  double f_squared(double zeta) const {
    check_zeta(zeta);
    if (zeta == 0.0) return 1.0;
    return 1.0 - coef_ * zeta * specfun::scaled_erfc(xfac_ * zeta) +
           0.25 * zeta * zeta;
  }

  // d(f^2)/dzeta, via d/dx w[x] = 2x w[x] - 2/sqrt(pi):
  //   (f^2)' = -(3R0/2) sqrt(A) [(1+2x^2) w(x) - 2x/sqrt(pi)] + zeta/2,  x = sqrt(A/2) zeta
  double f_squared_prime(double zeta) const {
    check_zeta(zeta);
    const double x = xfac_ * zeta;
    const double w = specfun::scaled_erfc(x);
    return -coef_ * ((1.0 + 2.0 * x * x) * w -
                     2.0 * x / std::sqrt(std::numbers::pi)) +
           0.5 * zeta;
  }

  double f(double zeta) const {
    const double fsq = f_squared(zeta);
    if (!(fsq > 0.0) && zeta > 0.0) throw InstabilityError(zeta, fsq);
    return std::sqrt(fsq);
  }

  double zf(double zeta) const { return zeta * f(zeta); }

  // (zeta f)' = f + zeta f' = (2 f^2 + zeta (f^2)') / (2 f)
  double zf_prime(double zeta) const {
    const double fsq = f_squared(zeta);
    if (!(fsq > 0.0)) throw InstabilityError(zeta, fsq);
    return (2.0 * fsq + zeta * f_squared_prime(zeta)) / (2.0 * std::sqrt(fsq));
  }

 private:
  static void check_zeta(double zeta) {
    if (!(zeta >= 0.0) || !std::isfinite(zeta))
      throw std::domain_error("dispersion: require finite zeta >= 0");
  }

  CondensateParams p_;
  double coef_;
  double xfac_;
};

// f == 1 test hook: the analogue massless (Lorentz-invariant) field.
struct UnitDispersion {
  double f_squared(double) const { return 1.0; }
  double f_squared_prime(double) const { return 0.0; }
  double f(double) const { return 1.0; }
  double zf(double zeta) const { return zeta; }
  double zf_prime(double) const { return 1.0; }
  double exact_zf_inverse(double target) const { return target; }
};

namespace detail {

// Scan grid: logarithmic on (zeta_lo, 1], linear on [1, zeta_max].
inline std::vector<double> scan_grid(double zeta_max, std::size_t n_log = 2000,
                                     std::size_t n_lin = 2000) {
  std::vector<double> z;
  z.reserve(n_log + n_lin);
  const double lo = 1e-4;
  for (std::size_t i = 0; i < n_log; ++i)
    z.push_back(lo * std::pow(1.0 / lo, static_cast<double>(i) /
                                            static_cast<double>(n_log - 1)));
  if (zeta_max > 1.0) {
    for (std::size_t i = 1; i < n_lin; ++i)
      z.push_back(1.0 + (zeta_max - 1.0) * static_cast<double>(i) /
                            static_cast<double>(n_lin - 1));
  }
  return z;
}

struct DispersionAnalysis {
  bool stable = true;
  bool has_interior_min = false;
  double zeta_c = 0.0;
  double f_c = 1.0;
  double min_f_squared = 1.0;
  bool zf_monotone = true;
  double zf_prime_lb = 1.0;            // grid lower bound of (zf)' (stable region)
  std::vector<double> zf_stationary;   // ascending zeros of (zf)'
  double zeta_max = 50.0;
};

template <class D>
DispersionAnalysis analyze_dispersion(const D& d, double zeta_max = 50.0) {
  DispersionAnalysis out;
  out.zeta_max = zeta_max;
  const auto grid = scan_grid(zeta_max);
  const std::size_t n = grid.size();

  std::vector<double> fsq(n), fsqp(n), q(n);
  std::size_t imin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    fsq[i] = d.f_squared(grid[i]);
    fsqp[i] = d.f_squared_prime(grid[i]);
    q[i] = 2.0 * fsq[i] + grid[i] * fsqp[i];  // sign of (zf)' where f^2 > 0
    if (fsq[i] < fsq[imin]) imin = i;
  }

  // refine the global minimum of f^2 by bisection on (f^2)'
  double zc = grid[imin], mfsq = fsq[imin];
  if (imin > 0 && imin + 1 < n) {
    std::size_t a = imin - 1, b = imin + 1;
    if (fsqp[a] < 0.0 && fsqp[b] > 0.0) {
      zc = brent([&](double z) { return d.f_squared_prime(z); }, grid[a],
                 grid[b], fsqp[a], fsqp[b], 1e-12);
      mfsq = d.f_squared(zc);
      out.has_interior_min = true;
    }
  }
  out.min_f_squared = std::min(mfsq, fsq[imin]);
  out.stable = out.min_f_squared > 0.0;
  if (out.has_interior_min && mfsq < 1.0) {
    out.zeta_c = zc;
    out.f_c = out.stable ? std::sqrt(std::max(mfsq, 0.0)) : 0.0;
  } else {
    out.has_interior_min = false;
    out.f_c = out.stable ? 1.0 : 0.0;
  }

  // stationary points of zeta f from sign changes of q (valid where f^2 > 0)
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (fsq[i] <= 0.0 || fsq[i + 1] <= 0.0) continue;
    if (q[i] == 0.0 || (q[i] > 0.0) != (q[i + 1] > 0.0)) {
      const double zs =
          brent([&](double z) { return 2.0 * d.f_squared(z) + z * d.f_squared_prime(z); },
                grid[i], grid[i + 1], q[i], q[i + 1], 1e-12);
      out.zf_stationary.push_back(zs);
    }
  }
  out.zf_monotone = out.stable && out.zf_stationary.empty();

  double qmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (fsq[i] <= 0.0) continue;
    qmin = std::min(qmin, q[i] / (2.0 * std::sqrt(fsq[i])));
  }
  out.zf_prime_lb = std::isfinite(qmin) ? 0.99 * qmin : 0.0;
  return out;
}

}  // namespace detail

// -- spec operations ---------------------------------------------------------

inline double f_of_zeta(const CondensateParams& p, double zeta) {
  return BogoliubovDispersion(p).f(zeta);
}

inline double f_squared_prime(const CondensateParams& p, double zeta) {
  return BogoliubovDispersion(p).f_squared_prime(zeta);
}

inline double zeta_f_prime(const CondensateParams& p, double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("zeta_f_prime: require zeta > 0");
  return BogoliubovDispersion(p).zf_prime(zeta);
}

// (u_k + v_k)^2 in dimensionless form: zeta / (2 f(zeta)).
inline double bogoliubov_weight(const CondensateParams& p, double zeta) {
  if (!(zeta > 0.0)) throw std::domain_error("bogoliubov_weight: require zeta > 0");
  return 0.5 * zeta / BogoliubovDispersion(p).f(zeta);
}

inline RotonInfo analyze_roton(const CondensateParams& p, double zeta_max = 50.0) {
  p.validate();
  const auto a = detail::analyze_dispersion(BogoliubovDispersion(p), zeta_max);
  RotonInfo info;
  info.stable = a.stable;
  info.f_c = a.f_c;
  info.zf_monotone = a.zf_monotone;
  if (a.has_interior_min) info.zeta_c = a.zeta_c;
  return info;
}

// Smallest A with min_zeta f^2 = 0 (within tol), or nullopt if the spectrum
// stays stable up to the search ceiling A = 1e4. Instability at any finite A
// requires R0 > sqrt(2 pi)/3 ~ 0.8355.
//
// Uses s = sqrt(A/2) zeta, in which f^2 = 1 - (3 R0/sqrt(2)) s w(s) + s^2/(2A):
// the w-evaluations are A-independent and min f^2 is strictly decreasing in A,
// so a cached s-grid plus bisection suffices.
inline std::optional<double> critical_a(double r0, double tol = 1e-6) {
  if (!std::isfinite(r0) || r0 < 0.0 || r0 > r0_max() * (1.0 + 1e-12))
    throw std::domain_error("critical_a: R0 out of [0, sqrt(pi/2)]");
  if (!(tol > 0.0)) throw std::domain_error("critical_a: tol must be > 0");
  if (r0 == 0.0) return std::nullopt;

  constexpr double ceiling = 1e4;
  const double c1 = 3.0 * r0 / std::numbers::sqrt2;

  const auto s_grid = detail::scan_grid(100.0, 1500, 2500);
  std::vector<double> sw(s_grid.size());
  for (std::size_t i = 0; i < s_grid.size(); ++i)
    sw[i] = s_grid[i] * specfun::scaled_erfc(s_grid[i]);

  const auto min_fsq = [&](double a_chem) {
    const double inv2a = 0.5 / a_chem;
    std::size_t imin = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
      const double v = 1.0 - c1 * sw[i] + s_grid[i] * s_grid[i] * inv2a;
      if (v < best) { best = v; imin = i; }
    }
    // golden-section refine inside the bracketing cells
    if (imin > 0 && imin + 1 < s_grid.size()) {
      const auto psi = [&](double s) {
        return 1.0 - c1 * s * specfun::scaled_erfc(s) + s * s * inv2a;
      };
      double a = s_grid[imin - 1], b = s_grid[imin + 1];
      constexpr double gr = 0.6180339887498949;
      double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
      double p1 = psi(x1), p2 = psi(x2);
      for (int it = 0; it < 60 && (b - a) > 1e-12 * (1.0 + b); ++it) {
        if (p1 < p2) { b = x2; x2 = x1; p2 = p1; x1 = b - gr * (b - a); p1 = psi(x1); }
        else { a = x1; x1 = x2; p1 = p2; x2 = a + gr * (b - a); p2 = psi(x2); }
      }
      best = std::min(best, std::min(p1, p2));
    }
    return best;
  };

  if (min_fsq(ceiling) > 0.0) return std::nullopt;
  double lo = 1e-3, hi = ceiling;
  if (min_fsq(lo) <= 0.0) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (min_fsq(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace unruh_fluid::dispersion
