#pragma once

namespace fracsph {

/// Cubic spline smoothing kernel in 1D, support radius 2h, normalization 1/h.
///
/// Branch joints z = 1 and z = 2 belong to the right-closed branch
/// (the outer piece); both pieces agree in value there.
class CubicKernel {
 public:
  static constexpr double kSupportFactor = 2.0;

  explicit CubicKernel(double h);

  double h() const noexcept { return h_; }
  double support_radius() const noexcept { return kSupportFactor * h_; }
  double normalization() const noexcept { return inv_h_; }

  /// W(r, h). Even in r, units 1/length.
  double value(double r) const;

  /// dW/dr. Odd in r, units 1/length².
  double gradient(double r) const;

  /// Ψ(r/h) = ∫_{-∞}^{r} W(u) du. Dimensionless, rises from 0 at r = -2h to 1 at r = 2h.
  double cumulative(double r) const;

  /// Ψ as a function of the scaled distance z = r/h.
  static double cumulative_scaled(double z) noexcept;

 private:
  double h_;
  double inv_h_;
};

}  // namespace fracsph
