#include "fracsph/kernel.hpp"

#include <cmath>

#include "fracsph/error.hpp"

namespace fracsph {

namespace {

void require_finite(double r) {
  if (!std::isfinite(r)) throw DomainError("kernel evaluated at a non-finite distance");
}

}  // namespace

CubicKernel::CubicKernel(double h) : h_(h), inv_h_(1.0 / h) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw ConstructionError("h", "smoothing length must be positive and finite");
}

double CubicKernel::value(double r) const {
  require_finite(r);
  const double z = std::abs(r) * inv_h_;
  if (z < 1.0) return inv_h_ * (2.0 / 3.0 - z * z + 0.5 * z * z * z);
  if (z < 2.0) {
    const double t = 2.0 - z;
    return inv_h_ * t * t * t / 6.0;
  }
  return 0.0;
}

double CubicKernel::gradient(double r) const {
  require_finite(r);
  const double z = std::abs(r) * inv_h_;
  double dz;  // dW/dz without the sign of r
  if (z < 1.0) {
    dz = -2.0 * z + 1.5 * z * z;
  } else if (z < 2.0) {
    const double t = 2.0 - z;
    dz = -0.5 * t * t;
  } else {
    return 0.0;
  }
  const double g = dz * inv_h_ * inv_h_;
  return r < 0.0 ? -g : g;
}

double CubicKernel::cumulative_scaled(double z) noexcept {
  if (z <= -2.0) return 0.0;
  if (z >= 2.0) return 1.0;
  const double u = std::abs(z);
  double upper;  // Ψ(|z|)
  if (u <= 1.0) {
    upper = 0.5 + u * (2.0 / 3.0 + u * u * (-1.0 / 3.0 + u / 8.0));
  } else {
    const double t = 2.0 - u;
    const double t2 = t * t;
    upper = 1.0 - t2 * t2 / 24.0;
  }
  return z < 0.0 ? 1.0 - upper : upper;
}

double CubicKernel::cumulative(double r) const {
  require_finite(r);
  return cumulative_scaled(r * inv_h_);
}

}  // namespace fracsph
