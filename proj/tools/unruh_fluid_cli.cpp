// unruh-fluid: dispersion, transition-rate and detailed-balance-temperature
// sweeps for a circularly moving impurity in a quasi-2D dipolar condensate,
// plus physical-unit mapping and cross-method verification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 physical-constraint violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unruh_fluid/dispersion.hpp"
#include "unruh_fluid/errors.hpp"
#include "unruh_fluid/limits.hpp"
#include "unruh_fluid/oracle.hpp"
#include "unruh_fluid/response.hpp"
#include "unruh_fluid/sweep.hpp"
#include "unruh_fluid/units.hpp"

namespace uf = unruh_fluid;
using uf::cli::format_sci;

namespace {

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + out_path);
  f << content;
}

struct CommonOpts {
  double r0 = 0.0;
  double a = 1.0;
  double m_tilde = 0.0;
  double v = 0.0;
  double e_tilde = 0.0;
  double omega0_mstar = -1.0;  // omega0 in M*/hbar units; E~ = M~ * this
  double tol = 1e-8;
  int threads = 0;
  std::string sweep;
  std::string out;
  bool log_spacing = false;
};

double resolve_e_tilde(const CommonOpts& o) {
  if (o.omega0_mstar >= 0.0) return o.m_tilde * o.omega0_mstar;
  return o.e_tilde;
}

// ---------------------------------------------------------------- dispersion

int cmd_dispersion(const CommonOpts& o, const std::string& zeta_range,
                   const std::string& cmdline) {
  const auto spec = uf::cli::parse_sweep(zeta_range, uf::cli::SweepAxis::zeta);
  uf::cli::SweepSpec s = spec;
  s.log_spacing = o.log_spacing;
  const auto zs = uf::cli::sweep_values(s);
  const uf::dispersion::CondensateParams p{o.r0, o.a};
  p.validate();
  const uf::dispersion::BogoliubovDispersion disp(p);

  std::vector<std::string> rows(zs.size());
  uf::cli::parallel_for_ordered(
      zs.size(), uf::cli::resolve_threads(o.threads), [&](std::size_t i) {
        const double z = zs[i];
        const double fsq = disp.f_squared(z);
        const bool ok = fsq >= 0.0;
        rows[i] = format_sci(z) + "," + format_sci(fsq) + "," +
                  format_sci(ok ? std::sqrt(fsq) : 0.0) + "," +
                  (ok ? "OK" : "UNSTABLE") + "\n";
      });

  std::string csv = uf::cli::provenance_line(cmdline) + "\n";
  csv += "zeta,f_squared,f,flag\n";
  for (const auto& r : rows) csv += r;
  write_output(o.out, csv);
  return 0;
}

// ---------------------------------------------------------------------- rate

struct RateRow {
  double axis = 0.0;
  uf::response::RateResult up, down;
  bool ok = false;
  std::string status = "ok";
};

RateRow rate_point(const uf::dispersion::CondensateParams& p,
                   const uf::response::DetectorOrbit& orbit, double tol,
                   double axis_value) {
  RateRow row;
  row.axis = axis_value;
  try {
    row.up = uf::response::transition_rate(p, orbit, tol);
    auto mirrored = orbit;
    mirrored.e_tilde = -orbit.e_tilde;
    row.down = uf::response::transition_rate(p, mirrored, tol);
    row.ok = true;
  } catch (const uf::InstabilityError&) {
    row.status = "unstable";
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

std::string rate_row_csv(const RateRow& r) {
  return format_sci(r.axis) + "," + format_sci(r.up.value) + "," +
         format_sci(r.down.value) + "," + std::to_string(r.up.m_min) + "," +
         std::to_string(r.up.m_used) + "," + format_sci(r.up.tail_bound) +
         "," + std::to_string(int(r.up.multi_root || r.down.multi_root)) +
         "," +
         std::to_string(int(r.up.near_singular || r.down.near_singular)) +
         "," + r.status + "\n";
}

int cmd_rate(const CommonOpts& o, bool verify_rows, const std::string& cmdline) {
  const auto spec = uf::cli::parse_sweep(o.sweep, uf::cli::SweepAxis::omega0);
  uf::cli::SweepSpec s = spec;
  s.log_spacing = o.log_spacing;
  const auto xs = uf::cli::sweep_values(s);
  const double e_fixed = resolve_e_tilde(o);

  std::vector<RateRow> rows(xs.size());
  uf::cli::parallel_for_ordered(
      xs.size(), uf::cli::resolve_threads(o.threads), [&](std::size_t i) {
        uf::dispersion::CondensateParams p{o.r0, o.a};
        uf::response::DetectorOrbit orbit{o.m_tilde, e_fixed, o.v};
        switch (s.axis) {
          case uf::cli::SweepAxis::omega0:
            orbit.e_tilde = o.m_tilde * xs[i];
            break;
          case uf::cli::SweepAxis::v:
            orbit.v = xs[i];
            break;
          case uf::cli::SweepAxis::a_chem:
            p.a_chem = xs[i];
            break;
          case uf::cli::SweepAxis::zeta:
            throw std::invalid_argument("rate: zeta is not a rate axis");
        }
        rows[i] = rate_point(p, orbit, o.tol, xs[i]);
      });

  std::string csv = uf::cli::provenance_line(cmdline) + "\n";
  csv +=
      "axis_value,rate_excite,rate_deexcite,m_min,m_used,tail_bound,"
      "multi_root,near_singular,status\n";
  std::size_t n_ok = 0;
  for (const auto& r : rows) {
    csv += rate_row_csv(r);
    n_ok += r.ok ? 1 : 0;
  }
  write_output(o.out, csv);
  if (n_ok == 0) {
    std::cerr << "rate: every sweep point failed\n";
    return 1;
  }

  if (verify_rows) {
    // spot-check first/middle/last successful rows against the smeared oracle
    std::vector<std::size_t> picks = {0, xs.size() / 2, xs.size() - 1};
    for (std::size_t i : picks) {
      if (!rows[i].ok) continue;
      uf::dispersion::CondensateParams p{o.r0, o.a};
      uf::response::DetectorOrbit orbit{o.m_tilde, e_fixed, o.v};
      if (s.axis == uf::cli::SweepAxis::omega0) orbit.e_tilde = o.m_tilde * xs[i];
      if (s.axis == uf::cli::SweepAxis::v) orbit.v = xs[i];
      if (s.axis == uf::cli::SweepAxis::a_chem) p.a_chem = xs[i];
      const double ref =
          uf::oracle::smeared_delta_rate(p, orbit, uf::oracle::default_config(p, orbit));
      const double got = rows[i].up.value;
      const double dev = std::abs(got - ref) / std::max(ref, 1e-12);
      if (!(dev <= 1e-3) && ref > 1e-250) {
        std::cerr << "verify: row " << i << " mode-sum " << got
                  << " vs oracle " << ref << " (rel dev " << dev << ")\n";
        return 1;
      }
    }
  }
  return 0;
}

// --------------------------------------------------------------- temperature

int cmd_temperature(const CommonOpts& o, const std::string& cmdline) {
  const auto spec = uf::cli::parse_sweep(o.sweep, uf::cli::SweepAxis::v);
  if (spec.axis != uf::cli::SweepAxis::v)
    throw std::invalid_argument("temperature: sweep axis must be v");
  uf::cli::SweepSpec s = spec;
  s.log_spacing = o.log_spacing;
  const auto vs = uf::cli::sweep_values(s);
  const double omega0 = o.omega0_mstar >= 0.0 ? o.omega0_mstar : 1.0;

  std::vector<std::string> rows(vs.size());
  uf::cli::parallel_for_ordered(
      vs.size(), uf::cli::resolve_threads(o.threads), [&](std::size_t i) {
        const uf::dispersion::CondensateParams p{o.r0, o.a};
        const uf::response::DetectorOrbit orbit{o.m_tilde,
                                                o.m_tilde * omega0, vs[i]};
        std::string status = "ok";
        double t_val = 0.0;
        try {
          const auto tp =
              uf::response::detailed_balance_temperature(p, orbit, o.tol);
          t_val = tp.temperature;
          using TS = uf::response::TemperatureStatus;
          status = tp.status == TS::ok ? "ok"
                   : tp.status == TS::underflow ? "underflow"
                                                : "undefined";
        } catch (const uf::InstabilityError&) {
          status = "unstable";
        } catch (const std::exception&) {
          status = "error";
        }
        rows[i] = format_sci(vs[i]) + "," + format_sci(t_val) + "," + status +
                  "\n";
      });

  std::string csv = uf::cli::provenance_line(cmdline) + "\n";
  csv += "v,temperature,status\n";
  for (const auto& r : rows) csv += r;
  write_output(o.out, csv);
  return 0;
}

// -------------------------------------------------------------- map-physical

struct PhysicalOpts {
  double mb_u = 163.929;
  double rho0 = 4.4e15;
  double omega_z = 2.0 * std::numbers::pi * 1e3;
  double ac_bohr = 100.0;
  double mu_mb = 10.0;
  double g_minus = -1.0;  // <0: pick so that rate_unit = 1 s^-1
  double radius = 10e-6;
  double omega_orbit = 800.0;
  double omega0 = -1.0;  // <0: set to M*/hbar after scales are known
  std::string config;
  std::string out;
};

void apply_config_file(PhysicalOpts& o) {
  std::ifstream f(o.config);
  if (!f) throw std::runtime_error("cannot open config " + o.config);
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();

  const auto set_key = [&](const std::string& key, double val) {
    if (key == "mb_u") o.mb_u = val;
    else if (key == "rho0") o.rho0 = val;
    else if (key == "omega_z") o.omega_z = val;
    else if (key == "ac_bohr") o.ac_bohr = val;
    else if (key == "mu_mb") o.mu_mb = val;
    else if (key == "g_minus") o.g_minus = val;
    else if (key == "radius") o.radius = val;
    else if (key == "omega_orbit") o.omega_orbit = val;
    else if (key == "omega0") o.omega0 = val;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  };

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, val] : j.items()) set_key(key, val.get<double>());
    return;
  }
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) continue;
    set_key(key, std::stod(trim(line.substr(eq + 1))));
  }
}

int cmd_map_physical(PhysicalOpts o, const std::string& cmdline) {
  if (!o.config.empty()) apply_config_file(o);
  namespace uc = uf::units::constants;
  uf::units::PhysicalSetup s;
  s.m_b = o.mb_u * uc::atomic_mass;
  s.rho0 = o.rho0;
  s.omega_z = o.omega_z;
  s.a_c = o.ac_bohr * uc::bohr_radius;
  s.mu_m = o.mu_mb * uc::mu_bohr;
  s.radius = o.radius;
  s.omega_orbit = o.omega_orbit;
  s.omega0 = std::max(o.omega0, 0.0);
  s.g_minus = o.g_minus > 0.0
                  ? o.g_minus
                  : std::sqrt(2.0 * uc::hbar * uc::hbar * uc::hbar /
                              (o.rho0 * s.m_b));  // rate_unit = 1 s^-1

  nlohmann::ordered_json j;
  try {
    auto d = uf::units::derive_scales(s);
    if (o.omega0 < 0.0) {  // default gap: omega0 = M*/hbar
      s.omega0 = d.m_star / uc::hbar;
      d = uf::units::derive_scales(s);
    }
    j["m_b_kg"] = s.m_b;
    j["rho0_per_m2"] = s.rho0;
    j["omega_z_rad_per_s"] = s.omega_z;
    j["a_c_m"] = s.a_c;
    j["mu_m_J_per_T"] = s.mu_m;
    j["g_minus_J_m2"] = s.g_minus;
    j["radius_m"] = s.radius;
    j["omega_orbit_rad_per_s"] = s.omega_orbit;
    j["omega0_rad_per_s"] = s.omega0;
    j["d_z_m"] = d.d_z;
    j["g_c_J_m3"] = d.g_c;
    j["g_d_J_m3"] = d.g_d;
    j["g0_eff_J_m2"] = d.g0_eff;
    j["c0_m_per_s"] = d.c0;
    j["m_star_J"] = d.m_star;
    j["r0"] = d.r0;
    j["a_chem"] = d.a_chem;
    j["m_tilde"] = d.m_tilde;
    j["e_tilde"] = d.e_tilde;
    j["v"] = d.v;
    j["rate_unit_per_s"] = d.rate_unit;
    j["temp_unit_K"] = d.temp_unit;
  } catch (const uf::PhysicalConstraintError& e) {
    nlohmann::ordered_json err;
    err["error"] = "physical_constraint";
    err["constraint"] = e.constraint();
    err["message"] = e.what();
    write_output(o.out, err.dump(2) + "\n");
    return 3;
  }
  // provenance goes to stderr: the JSON body stays a plain parseable object
  std::cerr << uf::cli::provenance_line(cmdline) << "\n";
  write_output(o.out, j.dump(2) + "\n");
  return 0;
}

// -------------------------------------------------------------------- verify

int cmd_verify(const CommonOpts& o, bool with_wightman, double window_periods,
               const std::string& cmdline) {
  const uf::dispersion::CondensateParams p{o.r0, o.a};
  const double e_fixed = resolve_e_tilde(o);
  const uf::response::DetectorOrbit orbit{o.m_tilde, e_fixed, o.v};
  nlohmann::ordered_json j;
  j["params"] = {{"r0", o.r0}, {"a_chem", o.a},      {"m_tilde", o.m_tilde},
                 {"v", o.v},   {"e_tilde", e_fixed}, {"tol", o.tol}};
  bool all_ok = true;

  try {
    const auto mode = uf::response::transition_rate(p, orbit, o.tol);
    j["mode_sum"] = mode.value;

    const auto cfg = uf::oracle::default_config(p, orbit);
    const double smeared = uf::oracle::smeared_delta_rate(p, orbit, cfg);
    const double dev = std::abs(mode.value - smeared) /
                       std::max({mode.value, smeared, 1e-12});
    const bool pass = dev <= 1e-3 || (mode.value < 1e-250 && smeared < 1e-250);
    j["smeared_delta"] = {{"value", smeared},
                          {"rel_dev", dev},
                          {"sigma", cfg.sigma},
                          {"pass", pass}};
    all_ok = all_ok && pass;

    const double fc = uf::limits::critical_velocity(p);
    const double p0_fig2 =
        uf::limits::p0_rate(orbit, o.tol) / (o.m_tilde * o.m_tilde);
    j["critical_velocity"] = fc;
    if (o.v <= fc) {
      const double dev0 = std::abs(mode.value - p0_fig2) /
                          std::max({mode.value, p0_fig2, 1e-300});
      // finite-M~ gap shrinks as 1/M~^2; only flag gross disagreement
      const bool pass0 = dev0 <= 0.25 || mode.value < 1e-250;
      j["li_limit"] = {{"p0_fig2_units", p0_fig2}, {"rel_dev", dev0}, {"pass", pass0}};
      all_ok = all_ok && pass0;
    } else {
      const double dp = uf::limits::delta_p_correction(p, orbit, o.tol);
      const double dev_no = std::abs(mode.value - p0_fig2) /
                            std::max(mode.value, 1e-300);
      const double dev_dp = std::abs(mode.value - p0_fig2 - dp) /
                            std::max(mode.value, 1e-300);
      j["li_limit"] = {{"p0_fig2_units", p0_fig2},
                       {"rel_dev_without_delta_p", dev_no},
                       {"expected_fail_without_delta_p", dev_no > dev_dp},
                       {"delta_p", dp},
                       {"rel_dev_with_delta_p", dev_dp}};
      // informational: Delta P closes the gap but finite-M~ wobble remains
    }

    if (with_wightman) {
      const double t_window = window_periods * 2.0 * std::numbers::pi / o.v;
      const double w = uf::oracle::wightman_rate(p, orbit, t_window);
      const double devw =
          std::abs(mode.value - w) / std::max({mode.value, w, 1e-12});
      const bool passw = devw <= 0.1 || (mode.value < 1e-250 && w < 1e-250);
      j["wightman"] = {{"value", w},
                       {"rel_dev", devw},
                       {"window_time", t_window},
                       {"pass", passw}};
      all_ok = all_ok && passw;
    }
  } catch (const uf::InstabilityError& e) {
    j["error"] = "instability";
    j["message"] = e.what();
    write_output(o.out, j.dump(2) + "\n");
    return 1;
  }

  j["pass"] = all_ok;
  std::cerr << uf::cli::provenance_line(cmdline) << "\n";
  write_output(o.out, j.dump(2) + "\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cmdline = join_args(argc, argv);
  CLI::App app{"circular-motion detector response in a dipolar quasi-2D condensate"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string zeta_range;
  bool verify_rows = false;
  bool with_wightman = false;
  double window_periods = 30.0;

  const auto add_common = [&](CLI::App* c, bool orbit_flags) {
    c->add_option("--r0", o.r0, "DDI ratio R0 in [0, sqrt(pi/2)]");
    c->add_option("--a", o.a, "effective chemical potential A");
    c->add_option("--tol", o.tol, "relative tolerance");
    c->add_option("--threads", o.threads,
                  "worker threads (0 = auto; env UNRUH_FLUID_THREADS overrides)");
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_flag("--log", o.log_spacing, "logarithmic sweep spacing");
    if (orbit_flags) {
      c->add_option("--mtilde", o.m_tilde, "M~ = R M*/(hbar c0)")->required();
      c->add_option("--v", o.v, "orbital speed v = R Omega/c0");
      c->add_option("--etilde", o.e_tilde, "E~ = R omega0/c0");
      c->add_option("--omega0-mstar", o.omega0_mstar,
                    "omega0 in M*/hbar units (alternative to --etilde)");
    }
  };

  auto* c_disp = app.add_subcommand("dispersion", "f(zeta) table");
  add_common(c_disp, false);
  c_disp->add_option("--zeta", zeta_range, "zeta sweep START:STOP:POINTS")
      ->required();

  auto* c_rate = app.add_subcommand("rate", "transition-rate sweep");
  add_common(c_rate, true);
  c_rate->add_option("--sweep", o.sweep, "AXIS=START:STOP:POINTS (omega0|v|a_chem)")
      ->required();
  c_rate->add_flag("--verify", verify_rows,
                   "cross-check sampled rows against the smeared-delta oracle");

  auto* c_temp = app.add_subcommand("temperature", "detailed-balance temperature sweep");
  add_common(c_temp, true);
  c_temp->add_option("--sweep", o.sweep, "v=START:STOP:POINTS")->required();

  PhysicalOpts po;
  auto* c_map = app.add_subcommand("map-physical",
                                   "laboratory parameters -> dimensionless scales (JSON)");
  c_map->add_option("--mb-u", po.mb_u, "boson mass in atomic units");
  c_map->add_option("--rho0", po.rho0, "areal density (m^-2)");
  c_map->add_option("--omegaz", po.omega_z, "trap frequency (rad/s)");
  c_map->add_option("--ac-bohr", po.ac_bohr, "s-wave scattering length (Bohr radii)");
  c_map->add_option("--mu-mb", po.mu_mb, "magnetic moment (Bohr magnetons)");
  c_map->add_option("--gminus", po.g_minus,
                    "detector coupling g_- (J m^2); default sets rate_unit = 1/s");
  c_map->add_option("--radius", po.radius, "orbit radius R (m)");
  c_map->add_option("--omega-orbit", po.omega_orbit, "orbital Omega (rad/s)");
  c_map->add_option("--omega0", po.omega0, "detector gap (rad/s); default M*/hbar");
  c_map->add_option("--config", po.config, "key=value or JSON config file");
  c_map->add_option("--out", po.out, "output file (default stdout)");

  auto* c_verify = app.add_subcommand("verify", "cross-method verification report");
  add_common(c_verify, true);
  c_verify->add_flag("--with-wightman", with_wightman, "include the windowed-FT oracle");
  c_verify->add_option("--window-periods", window_periods,
                       "Hann window half-width in orbital periods");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (c_disp->parsed()) return cmd_dispersion(o, zeta_range, cmdline);
    if (c_rate->parsed()) return cmd_rate(o, verify_rows, cmdline);
    if (c_temp->parsed()) return cmd_temperature(o, cmdline);
    if (c_map->parsed()) return cmd_map_physical(po, cmdline);
    if (c_verify->parsed())
      return cmd_verify(o, with_wightman, window_periods, cmdline);
  } catch (const uf::PhysicalConstraintError& e) {
    nlohmann::ordered_json err;
    err["error"] = "physical_constraint";
    err["constraint"] = e.constraint();
    err["message"] = e.what();
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
