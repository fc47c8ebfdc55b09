#include <cmath>
#include <cstddef>

#include "fracsph/simd/power_sum.hpp"

namespace fracsph::simd::detail {

double power_sum_scalar(double x, const double* pos, const double* coef, std::size_t n, double p) {
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = x - pos[j];
    if (d < kTinyBase) continue;
    sum += coef[j] * std::pow(d, p);
  }
  return sum;
}

}  // namespace fracsph::simd::detail
