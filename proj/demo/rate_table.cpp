// Minimal library usage example: excitation/de-excitation rates and the
// detailed-balance temperature across orbital speeds, for the DDI-dominated
// condensate (R0 = sqrt(pi/2)) against the contact-only reference (R0 = 0).

#include <cstdio>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/limits.hpp"
#include "unruh_fluid/response.hpp"

int main() {
  using namespace unruh_fluid;

  const dispersion::CondensateParams dipolar{dispersion::r0_max(), 3.0};
  const dispersion::CondensateParams contact{0.0, 3.0};
  const double m_tilde = 10.0;
  const double omega0_mstar = 1.0;  // gap = M*/hbar

  std::printf("# v_c (roton critical speed) = %.6f\n",
              limits::critical_velocity(dipolar));
  std::printf("%8s %14s %14s %14s %14s\n", "v", "P_up(DDI)", "P_up(contact)",
              "T(DDI)", "T(contact)");
  for (double v = 0.60; v <= 0.951; v += 0.05) {
    const response::DetectorOrbit orbit{m_tilde, m_tilde * omega0_mstar, v};
    const auto up_d = response::transition_rate(dipolar, orbit);
    const auto up_c = response::transition_rate(contact, orbit);
    const auto t_d = response::detailed_balance_temperature(dipolar, orbit);
    const auto t_c = response::detailed_balance_temperature(contact, orbit);
    std::printf("%8.3f %14.6e %14.6e %14.6e %14.6e\n", v, up_d.value,
                up_c.value, t_d.temperature, t_c.temperature);
  }
  return 0;
}
