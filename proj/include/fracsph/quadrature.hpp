#pragma once

#include <cstddef>
#include <functional>

namespace fracsph {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [lo, hi].
///
/// The interval with the largest |K15 − G7| is bisected until the summed
/// estimate meets max(abs_tol, rel_tol·|I|). Throws ConvergenceError when
/// max_intervals is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureOptions& options = {});

}  // namespace fracsph
