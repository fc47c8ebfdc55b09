#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracsph/kernel.hpp"

namespace fracsph {

/// Half-open range [begin, end) of particle indices.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return end == begin; }
};

enum class VirtualLayer {
  Full,  // ⌈2h/s⌉ virtual particles on each side
  None,  // real particles only; boundary supports are truncated
};

/// Uniform 1D particle discretization of [a, b].
///
/// All particles (left virtual, real, right virtual) live in one ordered
/// array; real particle i has global index `first_real() + i`.
class ParticleDomain1D {
 public:
  ParticleDomain1D(double a, double b, std::size_t n_real, double h, double rho0,
                   VirtualLayer layer);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double spacing() const noexcept { return spacing_; }
  double h() const noexcept { return kernel_.h(); }
  double rho0() const noexcept { return rho0_; }
  const CubicKernel& kernel() const noexcept { return kernel_; }

  std::size_t n_real() const noexcept { return n_real_; }
  std::size_t virtual_per_side() const noexcept { return n_virtual_; }
  std::size_t size() const noexcept { return positions_.size(); }
  std::size_t first_real() const noexcept { return n_virtual_; }
  std::size_t global_index(std::size_t real_index) const noexcept { return n_virtual_ + real_index; }
  bool is_real(std::size_t global) const noexcept {
    return global >= n_virtual_ && global < n_virtual_ + n_real_;
  }

  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> real_positions() const noexcept {
    return std::span<const double>(positions_).subspan(n_virtual_, n_real_);
  }
  std::span<const double> virtual_left() const noexcept {
    return std::span<const double>(positions_).first(n_virtual_);
  }
  std::span<const double> virtual_right() const noexcept {
    return std::span<const double>(positions_).last(n_virtual_);
  }
  std::span<const double> masses() const noexcept { return masses_; }
  std::span<const double> densities() const noexcept { return densities_; }
  /// m_j / ρ_j, the 1D particle volume.
  std::span<const double> volumes() const noexcept { return volumes_; }

  /// Global indices of the particles with |x − x_j| < 2h. O(1) index arithmetic.
  IndexRange neighbor_window(double x) const;

 private:
  double a_;
  double b_;
  std::size_t n_real_;
  double spacing_;
  double rho0_;
  CubicKernel kernel_;
  std::size_t n_virtual_;
  std::vector<double> positions_;
  std::vector<double> masses_;
  std::vector<double> densities_;
  std::vector<double> volumes_;
};

/// Validates inputs and builds the domain. Throws ConstructionError naming the bad parameter.
ParticleDomain1D build_domain(double a, double b, std::size_t n_real, double h, double rho0 = 1.0,
                              VirtualLayer layer = VirtualLayer::Full);

/// Midpoints between consecutive particles, with averaged mass and density.
struct AuxiliaryParticles {
  /// Global index of the left parent of midpoint 0; midpoint j sits between
  /// particles first_parent + j and first_parent + j + 1.
  std::size_t first_parent = 0;
  std::vector<double> positions;
  std::vector<double> masses;
  std::vector<double> densities;
  std::vector<double> volumes;

  std::size_t size() const noexcept { return positions.size(); }
};

enum class AuxiliaryLayer {
  Real,         // n_real − 1 midpoints inside [a, b]
  WithVirtual,  // midpoints across the virtual layer as well; pairs with bounded integration weights
};

AuxiliaryParticles auxiliary_particles(const ParticleDomain1D& domain,
                                       AuxiliaryLayer layer = AuxiliaryLayer::Real);

}  // namespace fracsph
