#pragma once

// Adaptive Gauss-Kronrod 7/15 quadrature on finite intervals. Recursive
// bisection until the embedded error estimate meets the tolerance.

#include <cmath>
#include <stdexcept>

namespace unruh_fluid::quadrature {

namespace detail {

// K15 nodes (positive half) and weights; rows 0-3 carry the embedded G7 weights.
inline constexpr double kNodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529}};

template <class F>
double gk15(F&& f, double a, double b, double& err) {
  const double mid = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(mid);
  double g7 = kNodes[0][1] * f0;
  double k15 = kNodes[0][2] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kNodes[i][0];
    const double fi = f(mid + dx) + f(mid - dx);
    g7 += kNodes[i][1] * fi;
    k15 += kNodes[i][2] * fi;
  }
  g7 *= h;
  k15 *= h;
  err = std::abs(k15 - g7);
  err = 200.0 * err * std::sqrt(200.0 * err);  // (200 |K-G|)^{3/2} heuristic
  return k15;
}

template <class F>
double adapt(F&& f, double a, double b, double abs_tol, int depth) {
  double err = 0.0;
  const double s = gk15(f, a, b, err);
  if (err <= abs_tol || depth >= 48) return s;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * abs_tol, depth + 1) +
         adapt(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace detail

// Integrates f over [a, b] to roughly rel_tol (relative to a first whole-
// interval estimate, with abs_floor guarding vanishing integrals).
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_floor = 1e-300) {
  if (!(b >= a)) throw std::domain_error("quadrature: invalid interval");
  if (a == b) return 0.0;
  double err = 0.0;
  const double first = detail::gk15(f, a, b, err);
  const double tol = std::max(rel_tol * std::abs(first), abs_floor);
  if (err <= tol) return first;
  return detail::adapt(f, a, b, tol, 0);
}

}  // namespace unruh_fluid::quadrature
