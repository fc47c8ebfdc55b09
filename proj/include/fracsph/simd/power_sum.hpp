#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace fracsph::simd {

enum class Backend { Scalar, Avx2 };

/// Bases below this are treated as zero: their term is dropped.
inline constexpr double kTinyBase = 1e-300;

/// Σ_j coef[j] · (x − pos[j])^p.
///
/// Terms with x − pos[j] < kTinyBase contribute nothing, which is what
/// excludes the self term and every particle at or beyond x. `pos` and
/// `coef` must have equal length (DomainError otherwise).
double power_sum(double x, std::span<const double> pos, std::span<const double> coef, double p);

Backend active_backend() noexcept;
bool backend_available(Backend backend) noexcept;
/// Throws fracsph::Error when the backend is not available on this CPU/build.
void set_backend(Backend backend);
std::string_view backend_name(Backend backend) noexcept;

namespace detail {
double power_sum_scalar(double x, const double* pos, const double* coef, std::size_t n, double p);
#if defined(FRACSPH_HAVE_AVX2)
double power_sum_avx2(double x, const double* pos, const double* coef, std::size_t n, double p);
#endif
}  // namespace detail

}  // namespace fracsph::simd
