#include "tlps/schedule.hpp"

#include <cmath>

#include "tlps/errors.hpp"

namespace tlps {

double lipschitz_constant(std::size_t n, std::size_t k) {
  if (n < 2) throw ContractViolation("lipschitz_constant needs n >= 2");
  if (k < 1) throw ContractViolation("lipschitz_constant needs k >= 1");
  const double nd = static_cast<double>(n);
  return 2.0 * std::sqrt(nd * nd - 2.0 * nd + static_cast<double>(k));
}

namespace {
inline double next_a(double prev) { return (1.0 + std::sqrt(4.0 * prev * prev + 1.0)) / 2.0; }
}  // namespace

double nesterov_a(std::size_t r) {
  double a = 1.0;
  for (std::size_t i = 0; i < r; ++i) a = next_a(a);
  return a;
}

double step_coefficient(std::size_t r, double lipschitz) {
  if (!(lipschitz > 0.0)) throw ContractViolation("step_coefficient needs L > 0");
  const double ar = nesterov_a(r);
  const double an = next_a(ar);
  return (an + ar - 1.0) / (an * lipschitz);
}

StepSchedule::StepSchedule(double lipschitz) : lipschitz_(lipschitz) {
  if (!(lipschitz > 0.0)) throw ContractViolation("StepSchedule needs L > 0");
}

double StepSchedule::a(std::size_t r) {
  while (a_.size() <= r) a_.push_back(next_a(a_.back()));
  return a_[r];
}

double StepSchedule::alpha(std::size_t r) {
  const double ar = a(r);
  const double an = a(r + 1);
  return (an + ar - 1.0) / (an * lipschitz_);
}

}  // namespace tlps
