#ifndef TLPS_SCHEDULE_HPP
#define TLPS_SCHEDULE_HPP

#include <cstddef>
#include <vector>

namespace tlps {

// L = 2*sqrt(n^2 - 2n + k); requires n >= 2, k >= 1.
double lipschitz_constant(std::size_t n, std::size_t k);

// a_0 = 1, a_r = (1 + sqrt(4 a_{r-1}^2 + 1)) / 2
double nesterov_a(std::size_t r);

// alpha_r = (a_{r+1} + a_r - 1) / (a_{r+1} * L); collapses to 1/L at r = 0
double step_coefficient(std::size_t r, double lipschitz);

// Memoized a-sequence bound to one Lipschitz constant, as used by solvers.
class StepSchedule {
 public:
  explicit StepSchedule(double lipschitz);

  double a(std::size_t r);
  double alpha(std::size_t r);
  double lipschitz() const { return lipschitz_; }

 private:
  double lipschitz_;
  std::vector<double> a_{1.0};
};

}  // namespace tlps

#endif
