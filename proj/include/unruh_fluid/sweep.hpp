#pragma once

// Sweep parsing, deterministic parallel row evaluation, and fixed-format
// CSV/provenance helpers shared by the CLI.
//
// Output contract: every CSV starts with one '#' provenance line (command
// line, version, FNV-1a parameter hash), then a header row; floats are
// printed as %.16e (17 significant digits); row order is the sweep order
// regardless of the thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace unruh_fluid::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kThreadsEnvVar = "UNRUH_FLUID_THREADS";

enum class SweepAxis { omega0, v, zeta, a_chem };

struct SweepSpec {
  SweepAxis axis = SweepAxis::v;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  bool log_spacing = false;

  void validate() const {
    if (!(start < stop) && !(points == 2 && start <= stop))
      throw std::invalid_argument("sweep: require start < stop");
    if (points < 2) throw std::invalid_argument("sweep: require points >= 2");
    if (log_spacing && !(start > 0.0))
      throw std::invalid_argument("sweep: log spacing requires start > 0");
  }
};

inline SweepAxis parse_axis(std::string_view name) {
  if (name == "omega0") return SweepAxis::omega0;
  if (name == "v") return SweepAxis::v;
  if (name == "zeta") return SweepAxis::zeta;
  if (name == "a_chem" || name == "a") return SweepAxis::a_chem;
  throw std::invalid_argument("sweep: unknown axis '" + std::string(name) +
                              "' (omega0|v|zeta|a_chem)");
}

inline const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::omega0: return "omega0";
    case SweepAxis::v: return "v";
    case SweepAxis::zeta: return "zeta";
    case SweepAxis::a_chem: return "a_chem";
  }
  return "?";
}

// "START:STOP:POINTS" (range only) or "AXIS=START:STOP:POINTS".
inline SweepSpec parse_sweep(std::string_view text,
                             SweepAxis default_axis = SweepAxis::v) {
  SweepSpec spec;
  spec.axis = default_axis;
  std::string range(text);
  if (const auto eq = range.find('='); eq != std::string::npos) {
    spec.axis = parse_axis(range.substr(0, eq));
    range = range.substr(eq + 1);
  }
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("sweep: expected START:STOP:POINTS, got '" +
                                range + "'");
  try {
    spec.start = std::stod(range.substr(0, c1));
    spec.stop = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    spec.points = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("sweep: could not parse '" + range + "'");
  }
  spec.validate();
  return spec;
}

inline std::vector<double> sweep_values(const SweepSpec& spec) {
  spec.validate();
  std::vector<double> out(static_cast<std::size_t>(spec.points));
  const int n = spec.points;
  for (int i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
    out[static_cast<std::size_t>(i)] =
        spec.log_spacing
            ? spec.start * std::pow(spec.stop / spec.start, frac)
            : spec.start + (spec.stop - spec.start) * frac;
  }
  return out;
}

// %.16e: 17 significant digits, round-trip exact for doubles.
inline std::string format_sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string provenance_line(const std::string& command_line) {
  char hash[20];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a(command_line)));
  return "# unruh-fluid " + std::string(kVersion) + " | cmd: " + command_line +
         " | params: " + hash;
}

// --threads flag (0 = auto), overridden by UNRUH_FLUID_THREADS.
inline int resolve_threads(int flag_value) {
  if (const char* env = std::getenv(kThreadsEnvVar)) {
    const int n = std::atoi(env);
    if (n > 0) flag_value = n;
  }
  if (flag_value <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    flag_value = hw > 0 ? static_cast<int>(hw) : 1;
  }
  return std::min(flag_value, 256);
}

// Runs fn(i) for i in [0, n) across `threads` workers. fn must write only to
// its own slot; results are consumed in index order afterwards, so output is
// byte-identical for any thread count.
template <class F>
void parallel_for_ordered(std::size_t n, int threads, F&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          bool expected = false;
          if (failed.compare_exchange_strong(expected, true))
            first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(first_error);
}

}  // namespace unruh_fluid::cli
