#pragma once

// Laboratory parameters -> dimensionless inputs (R0, A, M~, E~, v) and back.
//
//   g_c = 4 pi hbar^2 a_c / m_B          contact coupling
//   g_d = mu_0 mu_m^2 / 3                dipole-dipole coupling
//   g0_eff = (g_c + 2 g_d) / (sqrt(2 pi) d_z),  d_z = sqrt(hbar/(m_B omega_z))
//   c0 = sqrt(g0_eff rho0 / m_B),  M* = m_B c0^2,  A = g0_eff rho0 / (hbar omega_z)
//   R0 = sqrt(pi/2) / (1 + g_c / (2 g_d))
//   M~ = R M*/(hbar c0),  E~ = R omega0/c0,  v = R Omega/c0
//   rate_unit = g_-^2 rho0 m_B / (2 hbar^3),  temp_unit = M*/k_B

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/response.hpp"

namespace unruh_fluid::units {

// CODATA-2018 values, pinned; covered by a checksum test.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double k_boltzmann = 1.380649e-23;      // J/K (exact)
inline constexpr double mu_0 = 1.25663706212e-6;         // N/A^2
inline constexpr double mu_bohr = 9.2740100783e-24;      // J/T
inline constexpr double atomic_mass = 1.66053906660e-27; // kg
inline constexpr double bohr_radius = 5.29177210903e-11; // m
}  // namespace constants

struct PhysicalSetup {
  double m_b = 163.929 * constants::atomic_mass;  // boson mass (kg), 164Dy
  double rho0 = 4.4e15;                           // areal density (m^-2)
  double omega_z = 2.0 * std::numbers::pi * 1e3;  // trap frequency (rad/s)
  double a_c = 100.0 * constants::bohr_radius;    // s-wave length (m), may be < 0
  double mu_m = 10.0 * constants::mu_bohr;        // magnetic moment (J/T)
  double g_minus = 1e-40;                         // detector coupling (J m^2)
  double radius = 10e-6;                          // orbit radius R (m)
  double omega_orbit = 0.0;                       // Omega (rad/s)
  double omega0 = 0.0;                            // detector gap (rad/s)

  void validate() const {
    const bool pos = m_b > 0.0 && rho0 > 0.0 && omega_z > 0.0 && radius > 0.0;
    if (!pos || !(mu_m > 0.0))
      throw std::domain_error(
          "PhysicalSetup: masses, densities, frequencies, radius, dipole "
          "moment must be > 0");
    if (omega_orbit < 0.0 || omega0 < 0.0)
      throw std::domain_error("PhysicalSetup: omega_orbit, omega0 must be >= 0");
  }
};

struct DerivedScales {
  double d_z = 0.0;      // m
  double g_c = 0.0;      // J m^3
  double g_d = 0.0;      // J m^3
  double g0_eff = 0.0;   // J m^2
  double c0 = 0.0;       // m/s
  double m_star = 0.0;   // J
  double r0 = 0.0;       // dimensionless
  double a_chem = 0.0;   // dimensionless
  double m_tilde = 0.0;  // dimensionless
  double e_tilde = 0.0;  // dimensionless
  double v = 0.0;        // dimensionless
  double rate_unit = 0.0;  // s^-1
  double temp_unit = 0.0;  // K
};

inline DerivedScales derive_scales(const PhysicalSetup& s) {
  s.validate();
  DerivedScales d;
  d.d_z = std::sqrt(constants::hbar / (s.m_b * s.omega_z));
  d.g_c = 4.0 * std::numbers::pi * constants::hbar * constants::hbar * s.a_c /
          s.m_b;
  d.g_d = constants::mu_0 * s.mu_m * s.mu_m / 3.0;
  d.g0_eff = (d.g_c + 2.0 * d.g_d) / (std::sqrt(2.0 * std::numbers::pi) * d.d_z);
  if (!(d.g0_eff > 0.0))
    throw PhysicalConstraintError(
        "attractive_collapse",
        "g0_eff <= 0: net attractive interaction, condensate collapses");
  d.c0 = std::sqrt(d.g0_eff * s.rho0 / s.m_b);
  d.m_star = s.m_b * d.c0 * d.c0;
  d.r0 = std::sqrt(std::numbers::pi / 2.0) / (1.0 + d.g_c / (2.0 * d.g_d));
  if (d.r0 < 0.0 || d.r0 >= dispersion::r0_max())
    throw std::domain_error("derive_scales: R0 = " + std::to_string(d.r0) +
                            " outside [0, sqrt(pi/2))");
  d.a_chem = d.g0_eff * s.rho0 / (constants::hbar * s.omega_z);
  d.m_tilde = s.radius * d.m_star / (constants::hbar * d.c0);
  d.e_tilde = s.radius * s.omega0 / d.c0;
  d.v = s.radius * s.omega_orbit / d.c0;
  if (d.v >= 1.0)
    throw PhysicalConstraintError(
        "superluminal_orbit",
        "R Omega = " + std::to_string(s.radius * s.omega_orbit) +
            " m/s exceeds the sound speed c0 = " + std::to_string(d.c0) +
            " m/s");
  d.rate_unit = s.g_minus * s.g_minus * s.rho0 * s.m_b /
                (2.0 * constants::hbar * constants::hbar * constants::hbar);
  d.temp_unit = d.m_star / constants::k_boltzmann;
  return d;
}

inline double to_physical_rate(double dimensionless_rate,
                               const DerivedScales& d) {
  return dimensionless_rate * d.rate_unit;
}

inline double from_physical_rate(double rate_si, const DerivedScales& d) {
  return rate_si / d.rate_unit;
}

inline double to_physical_temperature(double dimensionless_t,
                                      const DerivedScales& d) {
  return dimensionless_t * d.temp_unit;
}

inline dispersion::CondensateParams condensate_params(const DerivedScales& d) {
  return {d.r0, d.a_chem};
}

inline response::DetectorOrbit detector_orbit(const DerivedScales& d) {
  return {d.m_tilde, d.e_tilde, d.v};
}

}  // namespace unruh_fluid::units
