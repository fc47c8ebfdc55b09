#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracsph/fracops.hpp"

namespace fracsph {

struct ErrorReport {
  /// |reference − approx| per point; NaN at excluded points.
  std::vector<double> abs_errors;
  /// ‖Δ‖₂ / ‖reference‖₂. When the reference is identically zero this is the absolute ‖Δ‖₂
  /// and `l2_is_absolute` is set.
  double l2 = 0.0;
  bool l2_is_absolute = false;
  /// 1 − ΣΔ² / Σ(f − f̄)²; empty when the reference has no variance.
  std::optional<double> r2;
  std::size_t n_points = 0;
  std::size_t excluded_points = 0;
  double max_abs_error = 0.0;
};

/// Error norms of approx against reference, skipping points with exclude[i] != 0.
/// Throws DomainError on a length mismatch, fewer than two points, or a
/// non-finite value at a point that is not excluded.
ErrorReport error_report(std::span<const double> approx, std::span<const double> reference,
                         std::span<const std::uint8_t> exclude = {});

/// Same, excluding the field's singular_at_boundary points.
ErrorReport error_report(const OperatorField& approx, std::span<const double> reference);

}  // namespace fracsph
