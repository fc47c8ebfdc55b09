#pragma once

namespace fracsph {

/// A special-function value with a non-negative truncation/round-off estimate.
struct SpecialValue {
  double value = 0.0;
  double est_error = 0.0;
};

/// Γ(ν). Lanczos approximation, reflection below 1/2. Throws PoleError at ν ∈ {0, −1, −2, ...}.
SpecialValue gamma_fn(double nu);

/// Shorthand for gamma_fn(nu).value.
double gamma(double nu);

/// Γ(ν, z) = ∫_z^∞ t^{ν−1} e^{−t} dt for z ≥ 0 and any real ν.
///
/// Series for small z, Lentz continued fraction for large z, and the upward
/// recurrence Γ(ν, z) = (Γ(ν+1, z) − z^ν e^{−z}) / ν to reach ν > 0 otherwise.
SpecialValue upper_incomplete_gamma(double nu, double z);

/// ₁F₂(a₁; b₁, b₂; z) by direct series, summed in extended precision.
SpecialValue hyp1f2(double a1, double b1, double b2, double z);

/// ₂F₁(a, b; c; z). Terminating series for a or b ∈ {0, −1, ...}, Gauss series for |z| < 1.
/// Anything else throws UnsupportedError.
SpecialValue hyp2f1(double a, double b, double c, double z);

}  // namespace fracsph
