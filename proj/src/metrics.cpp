#include "fracsph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracsph/error.hpp"

namespace fracsph {

ErrorReport error_report(std::span<const double> approx, std::span<const double> reference,
                         std::span<const std::uint8_t> exclude) {
  if (approx.size() != reference.size())
    throw DomainError("error_report: approx has " + std::to_string(approx.size()) +
                      " values, reference has " + std::to_string(reference.size()));
  if (!exclude.empty() && exclude.size() != approx.size())
    throw DomainError("error_report: exclusion mask length mismatch");

  ErrorReport report;
  report.abs_errors.assign(approx.size(), std::numeric_limits<double>::quiet_NaN());
  double sum_ref = 0.0;
  double lowest = std::numeric_limits<double>::infinity();
  double highest = -lowest;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    if (!exclude.empty() && exclude[i]) {
      ++report.excluded_points;
      continue;
    }
    if (!std::isfinite(approx[i]) || !std::isfinite(reference[i]))
      throw DomainError("error_report: non-finite value at unexcluded point " + std::to_string(i));
    report.abs_errors[i] = std::abs(reference[i] - approx[i]);
    report.max_abs_error = std::max(report.max_abs_error, report.abs_errors[i]);
    sum_ref += reference[i];
    lowest = std::min(lowest, reference[i]);
    highest = std::max(highest, reference[i]);
    ++report.n_points;
  }
  if (report.n_points < 2) throw DomainError("error_report: at least two points are required");

  const double mean = sum_ref / static_cast<double>(report.n_points);
  double err2 = 0.0;
  double ref2 = 0.0;
  double var = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    if (!exclude.empty() && exclude[i]) continue;
    const double diff = reference[i] - approx[i];
    err2 += diff * diff;
    ref2 += reference[i] * reference[i];
    var += (reference[i] - mean) * (reference[i] - mean);
  }
  if (ref2 > 0.0) {
    report.l2 = std::sqrt(err2) / std::sqrt(ref2);
  } else {
    report.l2 = std::sqrt(err2);
    report.l2_is_absolute = true;
  }
  // An all-equal reference has no variance; rounding in the mean must not fake one.
  if (highest > lowest && var > 0.0) report.r2 = 1.0 - err2 / var;
  return report;
}

ErrorReport error_report(const OperatorField& approx, std::span<const double> reference) {
  return error_report(approx.values, reference, approx.singular_at_boundary);
}

}  // namespace fracsph
