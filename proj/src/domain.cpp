#include "fracsph/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fracsph/error.hpp"

namespace fracsph {

ParticleDomain1D::ParticleDomain1D(double a, double b, std::size_t n_real, double h, double rho0,
                                   VirtualLayer layer)
    : a_(a), b_(b), n_real_(n_real), spacing_(0.0), rho0_(rho0), kernel_(h), n_virtual_(0) {
  if (!std::isfinite(a)) throw ConstructionError("a", "must be finite");
  if (!std::isfinite(b) || !(b > a)) throw ConstructionError("b", "must be finite and greater than a");
  if (n_real < 2) throw ConstructionError("n_real", "at least two real particles are required");
  if (!(rho0 > 0.0) || !std::isfinite(rho0)) throw ConstructionError("rho0", "density must be positive");

  spacing_ = (b - a) / static_cast<double>(n_real - 1);
  if (layer == VirtualLayer::Full) {
    // Small relative slack keeps 2h/s = 2.2 from rounding up to 3 + ε.
    const double ratio = kernel_.support_radius() / spacing_;
    n_virtual_ = static_cast<std::size_t>(std::ceil(ratio * (1.0 - 1e-12)));
  }

  const std::size_t total = n_real_ + 2 * n_virtual_;
  positions_.resize(total);
  for (std::size_t g = 0; g < total; ++g) {
    const auto k = static_cast<std::int64_t>(g) - static_cast<std::int64_t>(n_virtual_);
    positions_[g] = a_ + static_cast<double>(k) * spacing_;
  }
  positions_[n_virtual_ + n_real_ - 1] = b_;

  const double mass = rho0_ * spacing_;
  masses_.assign(total, mass);
  densities_.assign(total, rho0_);
  volumes_.resize(total);
  for (std::size_t g = 0; g < total; ++g) volumes_[g] = masses_[g] / densities_[g];
}

IndexRange ParticleDomain1D::neighbor_window(double x) const {
  if (!std::isfinite(x)) throw DomainError("neighbor_window: non-finite evaluation point");
  const double radius = kernel_.support_radius();
  const double origin = positions_.front();
  const auto last = static_cast<std::int64_t>(positions_.size()) - 1;

  auto lo = static_cast<std::int64_t>(std::floor((x - radius - origin) / spacing_));
  auto hi = static_cast<std::int64_t>(std::ceil((x + radius - origin) / spacing_));
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min<std::int64_t>(hi, last);

  auto inside = [&](std::int64_t g) {
    return std::abs(x - positions_[static_cast<std::size_t>(g)]) < radius;
  };
  while (lo <= hi && !inside(lo)) ++lo;
  while (hi >= lo && !inside(hi)) --hi;
  if (lo > hi) return {};
  return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi) + 1};
}

ParticleDomain1D build_domain(double a, double b, std::size_t n_real, double h, double rho0,
                              VirtualLayer layer) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConstructionError("h", "smoothing length must be positive");
  return ParticleDomain1D(a, b, n_real, h, rho0, layer);
}

AuxiliaryParticles auxiliary_particles(const ParticleDomain1D& domain, AuxiliaryLayer layer) {
  const auto x = domain.positions();
  const auto m = domain.masses();
  const auto rho = domain.densities();
  const std::size_t first = layer == AuxiliaryLayer::Real ? domain.first_real() : 0;
  const std::size_t parents = layer == AuxiliaryLayer::Real ? domain.n_real() : domain.size();

  AuxiliaryParticles aux;
  aux.first_parent = first;
  const std::size_t n = parents - 1;
  aux.positions.resize(n);
  aux.masses.resize(n);
  aux.densities.resize(n);
  aux.volumes.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t l = first + j;
    aux.positions[j] = 0.5 * (x[l] + x[l + 1]);
    aux.masses[j] = 0.5 * (m[l] + m[l + 1]);
    aux.densities[j] = 0.5 * (rho[l] + rho[l + 1]);
    aux.volumes[j] = aux.masses[j] / aux.densities[j];
  }
  return aux;
}

}  // namespace fracsph
