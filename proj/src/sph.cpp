#include "fracsph/sph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracsph/error.hpp"

namespace fracsph {

FieldSamples::FieldSamples(const ParticleDomain1D& domain, std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() != domain.size())
    throw DomainError("field has " + std::to_string(values_.size()) + " samples, domain has " +
                      std::to_string(domain.size()) + " particles");
  for (std::size_t g = 0; g < values_.size(); ++g)
    if (!std::isfinite(values_[g]))
      throw DomainError("field sample " + std::to_string(g) + " is not finite");
}

FieldSamples sample_field(const ParticleDomain1D& domain, const std::function<double(double)>& f,
                          VirtualField mode) {
  const auto x = domain.positions();
  std::vector<double> values(x.size());
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (domain.is_real(g) || mode == VirtualField::Analytic) {
      values[g] = f(x[g]);
    } else if (mode == VirtualField::Zero) {
      values[g] = 0.0;
    } else {
      const double reflected = x[g] < domain.a() ? 2.0 * domain.a() - x[g] : 2.0 * domain.b() - x[g];
      values[g] = f(reflected);
    }
  }
  return FieldSamples(domain, std::move(values));
}

double correction_factor_at(const ParticleDomain1D& domain, std::size_t global) {
  const auto x = domain.positions();
  const auto vol = domain.volumes();
  const auto& kernel = domain.kernel();
  const IndexRange window = domain.neighbor_window(x[global]);
  double moment = 0.0;
  for (std::size_t j = window.begin; j < window.end; ++j) {
    const double r = x[global] - x[j];
    moment -= vol[j] * kernel.gradient(r) * r;
  }
  if (moment == 0.0 || !std::isfinite(moment))
    throw EvaluationError("gradient correction moment vanishes at particle " +
                          std::to_string(global) + " (x = " + std::to_string(x[global]) + ")");
  return 1.0 / moment;
}

CorrectionFactors correction_factors(const ParticleDomain1D& domain) {
  CorrectionFactors factors;
  factors.values.resize(domain.n_real());
  for (std::size_t i = 0; i < domain.n_real(); ++i)
    factors.values[i] = correction_factor_at(domain, domain.global_index(i));
  return factors;
}

double approximate_function(const ParticleDomain1D& domain, const FieldSamples& f, double x) {
  const double reach = domain.kernel().support_radius();
  if (!(x >= domain.a() - reach && x <= domain.b() + reach))
    throw DomainError("approximate_function: x outside [a - 2h, b + 2h]");
  const IndexRange window = domain.neighbor_window(x);
  if (window.empty()) throw EvaluationError("approximate_function: no particle within the support");
  const auto pos = domain.positions();
  const auto vol = domain.volumes();
  double sum = 0.0;
  for (std::size_t j = window.begin; j < window.end; ++j)
    sum += vol[j] * f[j] * domain.kernel().value(x - pos[j]);
  return sum;
}

namespace {

double raw_gradient_at(const ParticleDomain1D& domain, std::span<const double> f, std::size_t global) {
  const auto x = domain.positions();
  const auto vol = domain.volumes();
  const IndexRange window = domain.neighbor_window(x[global]);
  double sum = 0.0;
  for (std::size_t j = window.begin; j < window.end; ++j)
    sum += vol[j] * (f[j] - f[global]) * domain.kernel().gradient(x[global] - x[j]);
  return sum;
}

double brookshaw_at(const ParticleDomain1D& domain, std::span<const double> f, std::size_t global,
                    double eta, double factor) {
  const auto x = domain.positions();
  const auto vol = domain.volumes();
  const IndexRange window = domain.neighbor_window(x[global]);
  const double eta2 = eta * eta;
  double sum = 0.0;
  for (std::size_t j = window.begin; j < window.end; ++j) {
    if (j == global) continue;
    const double r = x[global] - x[j];
    const double grad = factor * domain.kernel().gradient(r);
    sum += vol[j] * (f[j] - f[global]) * (r * grad) / (r * r + eta2);
  }
  return -2.0 * sum;
}

void require_real(const ParticleDomain1D& domain, std::size_t real_index) {
  if (real_index >= domain.n_real())
    throw DomainError("real particle index " + std::to_string(real_index) + " out of range [0, " +
                      std::to_string(domain.n_real()) + ")");
}

}  // namespace

double corrected_gradient(const ParticleDomain1D& domain, const FieldSamples& f,
                          const CorrectionFactors& factors, std::size_t real_index) {
  require_real(domain, real_index);
  if (factors.values.size() != domain.n_real())
    throw DomainError("correction factors were computed on a different domain");
  return factors[real_index] * raw_gradient_at(domain, f.values(), domain.global_index(real_index));
}

std::vector<double> gradient_field(const ParticleDomain1D& domain, std::span<const double> f,
                                   bool corrected) {
  if (f.size() != domain.size()) throw DomainError("gradient_field: field length mismatch");
  std::vector<double> out(domain.size());
  for (std::size_t g = 0; g < domain.size(); ++g) {
    const double factor = corrected ? correction_factor_at(domain, g) : 1.0;
    out[g] = factor * raw_gradient_at(domain, f, g);
  }
  return out;
}

double integration_weight_at(const CubicKernel& kernel, double a, double upper, double xj,
                             WeightBounds bounds) {
  const double inv_h = 1.0 / kernel.h();
  const double top = CubicKernel::cumulative_scaled((upper - xj) * inv_h);
  if (bounds == WeightBounds::Cumulative) return top;
  const double bottom = CubicKernel::cumulative_scaled((a - xj) * inv_h);
  return std::clamp(top - bottom, 0.0, 1.0);
}

double integration_weight(const ParticleDomain1D& domain, double upper, std::size_t global,
                          WeightBounds bounds) {
  if (!(upper >= domain.a() && upper <= domain.b()))
    throw DomainError("integration upper bound outside [a, b]");
  return integration_weight_at(domain.kernel(), domain.a(), upper, domain.positions()[global], bounds);
}

double sph_integrate_standard(const ParticleDomain1D& domain, const FieldSamples& g, double upper,
                              WeightBounds bounds) {
  if (!(upper >= domain.a() && upper <= domain.b()))
    throw DomainError("integration upper bound outside [a, b]");
  const auto x = domain.positions();
  const auto vol = domain.volumes();
  std::size_t begin = 0;
  std::size_t end = domain.size();
  if (bounds == WeightBounds::Cumulative) {
    begin = domain.first_real();
    end = begin + domain.n_real();
  }
  double sum = 0.0;
  for (std::size_t j = begin; j < end; ++j)
    sum += vol[j] * g[j] * integration_weight_at(domain.kernel(), domain.a(), upper, x[j], bounds);
  return sum;
}

std::vector<double> average_to_auxiliary(const AuxiliaryParticles& aux, std::span<const double> f) {
  if (aux.size() > 0 && aux.first_parent + aux.size() >= f.size())
    throw DomainError("average_to_auxiliary: field is shorter than the auxiliary parents");
  std::vector<double> out(aux.size());
  const std::size_t first = aux.first_parent;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (f[first + j] + f[first + j + 1]);
  return out;
}

double sph_integrate_auxiliary(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                               const FieldSamples& g, double upper, WeightBounds bounds,
                               std::span<const double> exact_aux_values) {
  if (!(upper >= domain.a() && upper <= domain.b()))
    throw DomainError("integration upper bound outside [a, b]");
  if (!exact_aux_values.empty() && exact_aux_values.size() != aux.size())
    throw DomainError("exact auxiliary values do not match the auxiliary particle count");
  std::vector<double> averaged;
  std::span<const double> values = exact_aux_values;
  if (values.empty()) {
    averaged = average_to_auxiliary(aux, g.values());
    values = averaged;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < aux.size(); ++j)
    sum += aux.volumes[j] * values[j] *
           integration_weight_at(domain.kernel(), domain.a(), upper, aux.positions[j], bounds);
  return sum;
}

double default_brookshaw_eta(double h) noexcept { return 0.01 * h; }

double brookshaw_second_derivative(const ParticleDomain1D& domain, const FieldSamples& f,
                                   std::size_t real_index, const BrookshawOptions& options) {
  require_real(domain, real_index);
  const std::size_t g = domain.global_index(real_index);
  const double eta = options.eta.value_or(default_brookshaw_eta(domain.h()));
  const double factor = options.corrected ? correction_factor_at(domain, g) : 1.0;
  return brookshaw_at(domain, f.values(), g, eta, factor);
}

std::vector<double> brookshaw_field(const ParticleDomain1D& domain, std::span<const double> f,
                                    const BrookshawOptions& options) {
  if (f.size() != domain.size()) throw DomainError("brookshaw_field: field length mismatch");
  const double eta = options.eta.value_or(default_brookshaw_eta(domain.h()));
  std::vector<double> out(domain.size());
  for (std::size_t g = 0; g < domain.size(); ++g) {
    const double factor = options.corrected ? correction_factor_at(domain, g) : 1.0;
    out[g] = brookshaw_at(domain, f, g, eta, factor);
  }
  return out;
}

}  // namespace fracsph
