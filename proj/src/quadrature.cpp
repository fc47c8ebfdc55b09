#include "fracsph/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "fracsph/error.hpp"

namespace fracsph {

namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed nodes 1, 3, 5 and the centre.
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(centre);
  double kronrod = kKronrod[7] * fc;
  double gauss = kGauss[3] * fc;
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kNodes[k];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrod[k] * pair;
    if (k % 2 == 1) gauss += kGauss[k / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) throw EvaluationError("integrate_adaptive: non-finite integrand");
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    const QuadratureOptions& options) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw DomainError("integrate_adaptive: non-finite interval bound");
  if (lo == hi) return {};

  std::priority_queue<Panel> panels;
  panels.push(gauss_kronrod(f, lo, hi));
  double total = panels.top().value;
  double error = panels.top().error;
  std::size_t evaluations = 15;

  auto done = [&] { return error <= std::max(options.abs_tol, options.rel_tol * std::abs(total)); };
  while (!done()) {
    if (panels.size() >= options.max_intervals)
      throw ConvergenceError("integrate_adaptive: tolerance not reached", panels.size());
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi))
      throw ConvergenceError("integrate_adaptive: panel width reached machine resolution",
                             panels.size());
    const Panel left = gauss_kronrod(f, worst.lo, mid);
    const Panel right = gauss_kronrod(f, mid, worst.hi);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum from the panels to shed the drift of the running updates.
  QuadratureResult result;
  result.intervals = panels.size();
  result.evaluations = evaluations;
  while (!panels.empty()) {
    result.value += panels.top().value;
    result.est_error += panels.top().error;
    panels.pop();
  }
  return result;
}

}  // namespace fracsph
