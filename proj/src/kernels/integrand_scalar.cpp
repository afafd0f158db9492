#include "casimir/integrand.hpp"

namespace casimir::kernels {

double weighted_sum_scalar(Mode mode, double em1, double x0, const double* y, const double* w,
                           std::size_t n) {
  double acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * integrand<double>(mode, em1, x0, x0 + y[i]);
  return acc;
}

}  // namespace casimir::kernels
