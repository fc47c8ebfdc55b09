#pragma once

#include <cstdint>
#include <vector>

#include "fracsph/domain.hpp"
#include "fracsph/operator.hpp"
#include "fracsph/sph.hpp"

namespace fracsph {

/// Operator values at the real particles.
struct OperatorField {
  std::vector<double> x;
  std::vector<double> values;
  /// 1 where the exact value is unbounded (RL derivative at x = a with f(a) ≠ 0); values there are NaN.
  std::vector<std::uint8_t> singular_at_boundary;
  OperatorRequest request;

  std::size_t size() const noexcept { return values.size(); }
};

/// ⟨I^α f⟩ at every real particle.
///
/// `exact` is required only when req.aux_values == AuxValues::Exact.
OperatorField rl_integral(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                          const FieldSamples& f, const OperatorRequest& req,
                          const AnalyticField* exact = nullptr);

/// ⟨ᶜD^α f⟩: fractional integral of order 1 − α applied to the SPH derivative of f.
OperatorField caputo_derivative(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                                const FieldSamples& f, const OperatorRequest& req,
                                const AnalyticField* exact = nullptr);

/// ⟨D^α f⟩: the field g = I^{1−α} f is built at every particle, then differentiated.
OperatorField rl_derivative(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                            const FieldSamples& f, const OperatorRequest& req,
                            const AnalyticField* exact = nullptr);

/// Dispatches on req.op.
OperatorField evaluate_operator(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                                const FieldSamples& f, const OperatorRequest& req,
                                const AnalyticField* exact = nullptr);

}  // namespace fracsph
