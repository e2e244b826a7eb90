#pragma once

#include <stdexcept>
#include <string>

namespace unruh_fluid {

// Thrown when the Bogoliubov spectrum is evaluated where f^2(zeta) <= 0,
// i.e. the condensate parameters are past the instability threshold.
class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(double zeta, double f_squared)
      : std::runtime_error("unstable spectrum: f^2(" + std::to_string(zeta) +
                           ") = " + std::to_string(f_squared)),
        zeta_(zeta),
        f_squared_(f_squared) {}

  double zeta() const { return zeta_; }
  double f_squared() const { return f_squared_; }

 private:
  double zeta_;
  double f_squared_;
};

// Mode sum failed to meet its tolerance within the harmonic budget.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(long long m_min, long long m_used, double partial_sum,
                  double tail_bound)
      : std::runtime_error("mode sum not converged after m = " +
                           std::to_string(m_used) +
                           " (m_min = " + std::to_string(m_min) + ")"),
        m_min_(m_min),
        m_used_(m_used),
        partial_sum_(partial_sum),
        tail_bound_(tail_bound) {}

  long long m_min() const { return m_min_; }
  long long m_used() const { return m_used_; }
  double partial_sum() const { return partial_sum_; }
  double tail_bound() const { return tail_bound_; }

 private:
  long long m_min_;
  long long m_used_;
  double partial_sum_;
  double tail_bound_;
};

// Oracle quadrature cutoffs (zeta_cut / m_cut) leave non-negligible mass outside.
class CutoffError : public std::runtime_error {
 public:
  explicit CutoffError(const std::string& what) : std::runtime_error(what) {}
};

// Laboratory setup violates a physical constraint (superluminal orbit,
// attractive collapse, ...). The CLI maps this to exit code 3.
class PhysicalConstraintError : public std::runtime_error {
 public:
  PhysicalConstraintError(std::string constraint, const std::string& what)
      : std::runtime_error(what), constraint_(std::move(constraint)) {}

  const std::string& constraint() const { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace unruh_fluid
