#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracsph/domain.hpp"

namespace fracsph {

/// How field values are assigned to virtual particles.
enum class VirtualField {
  Analytic,  // evaluate the known function at the virtual position
  Zero,
  Mirror,  // f(2a − x) on the left, f(2b − x) on the right
};

/// Field values aligned with ParticleDomain1D::positions() (virtual and real).
class FieldSamples {
 public:
  /// Throws DomainError on a length mismatch or a non-finite value.
  FieldSamples(const ParticleDomain1D& domain, std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t global) const noexcept { return values_[global]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
};

FieldSamples sample_field(const ParticleDomain1D& domain, const std::function<double(double)>& f,
                          VirtualField mode = VirtualField::Analytic);

/// Per-real-particle Bonet-Lok factor 1 / (−Σ V_j W'(x_ij) x_ij).
struct CorrectionFactors {
  std::vector<double> values;

  double operator[](std::size_t real_index) const noexcept { return values[real_index]; }
};

/// Throws EvaluationError naming the particle when a moment sum vanishes.
CorrectionFactors correction_factors(const ParticleDomain1D& domain);

/// Correction factor for any particle (virtual ones see a one-sided support).
double correction_factor_at(const ParticleDomain1D& domain, std::size_t global);

/// Σ V_j f_j W(x − x_j). x must lie in [a − 2h, b + 2h].
double approximate_function(const ParticleDomain1D& domain, const FieldSamples& f, double x);

/// L_i⁻¹ Σ V_j (f_j − f_i) ∇_i W_ij at real particle i.
///
/// Equal to the plain Σ V_j f_j ∇_i W_ij form whenever the support is
/// complete; the difference form stays first-order consistent when it is not.
double corrected_gradient(const ParticleDomain1D& domain, const FieldSamples& f,
                          const CorrectionFactors& factors, std::size_t real_index);

/// Gradient at every particle, real and virtual. `corrected = false` gives the raw kernel gradient.
std::vector<double> gradient_field(const ParticleDomain1D& domain, std::span<const double> f,
                                   bool corrected = true);

/// Which kernel mass counts as "inside" the integration interval [a, upper].
enum class WeightBounds {
  /// W̃ = Ψ((upper − x_j)/h) − Ψ((a − x_j)/h), clamped to [0, 1]; real and virtual particles.
  Bounded,
  /// W̃ = Ψ((upper − x_j)/h); real (or auxiliary) particles only.
  Cumulative,
};

/// W̃ for a particle at x_j. Pure kernel arithmetic, no range checks.
double integration_weight_at(const CubicKernel& kernel, double a, double upper, double xj,
                             WeightBounds bounds);

/// W̃ for global particle j. `upper` must lie in [a, b].
double integration_weight(const ParticleDomain1D& domain, double upper, std::size_t global,
                          WeightBounds bounds = WeightBounds::Bounded);

/// Σ V_j g_j W̃_j ≈ ∫_a^upper g dx.
double sph_integrate_standard(const ParticleDomain1D& domain, const FieldSamples& g, double upper,
                              WeightBounds bounds = WeightBounds::Bounded);

/// Same integral over the auxiliary midpoints. Auxiliary values are the
/// average of the two parent values unless `exact_aux_values` is given.
///
/// Midpoints confined to [a, b] leave about 0.23·s of kernel mass uncovered
/// at each bounded end; pair bounded weights with AuxiliaryLayer::WithVirtual.
double sph_integrate_auxiliary(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                               const FieldSamples& g, double upper,
                               WeightBounds bounds = WeightBounds::Bounded,
                               std::span<const double> exact_aux_values = {});

/// Two-point averages of particle values (global ordering) onto the auxiliary midpoints.
std::vector<double> average_to_auxiliary(const AuxiliaryParticles& aux, std::span<const double> f);

/// η = 0.01 h, i.e. η² = 1e-4 h².
double default_brookshaw_eta(double h) noexcept;

struct BrookshawOptions {
  std::optional<double> eta;  // defaults to default_brookshaw_eta(h)
  bool corrected = true;
};

/// −2 Σ V_j (f_j − f_i) (x_ij ∇_i W_ij) / (x_ij² + η²) at real particle i.
double brookshaw_second_derivative(const ParticleDomain1D& domain, const FieldSamples& f,
                                   std::size_t real_index, const BrookshawOptions& options = {});

/// Brookshaw second derivative at every particle, real and virtual.
std::vector<double> brookshaw_field(const ParticleDomain1D& domain, std::span<const double> f,
                                    const BrookshawOptions& options = {});

}  // namespace fracsph
