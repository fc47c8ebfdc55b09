#include <atomic>
#include <cstdlib>
#include <string>

#include "fracsph/error.hpp"
#include "fracsph/simd/power_sum.hpp"

namespace fracsph::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(FRACSPH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("FRACSPH_SIMD")) {
    if (std::string(env) == "scalar") return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend backend) noexcept {
  return backend == Backend::Scalar || cpu_has_avx2();
}

void set_backend(Backend backend) {
  if (!backend_available(backend))
    throw Error("SIMD backend '" + std::string(backend_name(backend)) + "' is not available");
  current().store(backend, std::memory_order_relaxed);
}

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

double power_sum(double x, std::span<const double> pos, std::span<const double> coef, double p) {
  if (pos.size() != coef.size()) throw DomainError("power_sum: pos and coef differ in length");
  const std::size_t n = pos.size();
#if defined(FRACSPH_HAVE_AVX2)
  if (active_backend() == Backend::Avx2)
    return detail::power_sum_avx2(x, pos.data(), coef.data(), n, p);
#endif
  return detail::power_sum_scalar(x, pos.data(), coef.data(), n, p);
}

}  // namespace fracsph::simd
