#include "fracsph/analytic.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fracsph/error.hpp"
#include "fracsph/quadrature.hpp"
#include "fracsph/special.hpp"

namespace fracsph {

namespace {

constexpr double kDiffStep = 1e-3;

double ipow(double base, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= base;
  return r;
}

double falling(int n, int k) {
  double r = 1.0;
  for (int j = 0; j < k; ++j) r *= n - j;
  return r;
}

// D^μ of each family at x > 0 with lower bound 0; μ = α is the RL derivative, μ = −α the RL integral.
double rl_closed_form(const TestFunction& fn, double mu, double x) {
  const double beta = fn.beta();
  const double z = -beta * beta * x * x / 4.0;
  switch (fn.family()) {
    case FunctionFamily::Sine:
      return beta * std::pow(x, 1.0 - mu) / gamma(2.0 - mu) *
             hyp1f2(1.0, 1.0 - mu / 2.0, 1.5 - mu / 2.0, z).value;
    case FunctionFamily::Cosine:
      return std::pow(x, -mu) / gamma(1.0 - mu) *
             hyp1f2(1.0, (1.0 - mu) / 2.0, 1.0 - mu / 2.0, z).value;
    case FunctionFamily::Exponential: {
      const double bx = beta * x;
      const double ratio = upper_incomplete_gamma(-mu, bx).value / gamma(-mu);
      return std::pow(beta, mu) * std::exp(bx) * (1.0 - ratio);
    }
    case FunctionFamily::ShiftedPower: {
      const int n = fn.power();
      if (beta == 0.0) return std::pow(x, n - mu) * gamma(n + 1.0) / gamma(n + 1.0 - mu);
      return ipow(beta, n) * std::pow(x, -mu) / gamma(1.0 - mu) *
             hyp2f1(1.0, -n, 1.0 - mu, -x / beta).value;
    }
    case FunctionFamily::Expression:
      break;
  }
  throw UnsupportedError("no closed form for expression functions");
}

double caputo_closed_form(const TestFunction& fn, double alpha, double x) {
  const double beta = fn.beta();
  const double z = -beta * beta * x * x / 4.0;
  switch (fn.family()) {
    case FunctionFamily::Sine:
      return rl_closed_form(fn, alpha, x);
    case FunctionFamily::Cosine:
      return -beta * beta * std::pow(x, 2.0 - alpha) / gamma(3.0 - alpha) *
             hyp1f2(1.0, 1.5 - alpha / 2.0, 2.0 - alpha / 2.0, z).value;
    case FunctionFamily::Exponential: {
      const double bx = beta * x;
      const double ratio = upper_incomplete_gamma(1.0 - alpha, bx).value / gamma(1.0 - alpha);
      return std::pow(beta, alpha) * std::exp(bx) * (1.0 - ratio);
    }
    case FunctionFamily::ShiftedPower: {
      const int n = fn.power();
      if (n == 0) return 0.0;
      if (beta == 0.0) return std::pow(x, n - alpha) * gamma(n + 1.0) / gamma(n + 1.0 - alpha);
      return n * ipow(beta, n - 1) * std::pow(x, 1.0 - alpha) / gamma(2.0 - alpha) *
             hyp2f1(1.0, 1 - n, 2.0 - alpha, -x / beta).value;
    }
    case FunctionFamily::Expression:
      break;
  }
  throw UnsupportedError("no closed form for expression functions");
}

double unbounded_at_lower(double fa) {
  if (fa == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), fa);
}

// ∫_a^x (x − x′)^{p−1} g(x′) dx′ through t = (x − x′)^p.
double kernel_integral(const std::function<double(double)>& g, double p, double a, double x,
                       const QuadratureOptions& q) {
  if (!(x > a)) return 0.0;
  const double top = std::pow(x - a, p);
  const double inv_p = 1.0 / p;
  auto integrand = [&](double t) { return g(std::max(a, x - std::pow(t, inv_p))); };
  return integrate_adaptive(integrand, 0.0, top, q).value * inv_p;
}

double five_point(const std::function<double(double)>& fn, double x, double step) {
  return (-fn(x + 2.0 * step) + 8.0 * fn(x + step) - 8.0 * fn(x - step) + fn(x - 2.0 * step)) /
         (12.0 * step);
}

}  // namespace

TestFunction TestFunction::sine(double beta) { return {FunctionFamily::Sine, beta, 0, std::nullopt}; }
TestFunction TestFunction::cosine(double beta) { return {FunctionFamily::Cosine, beta, 0, std::nullopt}; }
TestFunction TestFunction::exponential(double beta) {
  return {FunctionFamily::Exponential, beta, 0, std::nullopt};
}
TestFunction TestFunction::shifted_power(double beta, int n) {
  if (n < 0) throw DomainError("shifted_power: exponent must be non-negative");
  return {FunctionFamily::ShiftedPower, beta, n, std::nullopt};
}
TestFunction TestFunction::expression(Expr expr) {
  return {FunctionFamily::Expression, 0.0, 0, std::move(expr)};
}

TestFunction TestFunction::preset(std::string_view name) {
  if (name == "sin_pi_x") return sine(std::numbers::pi);
  if (name == "cos_pi_x") return cosine(std::numbers::pi);
  if (name == "exp_x") return exponential(1.0);
  if (name == "shifted_cubic") return shifted_power(-1.0, 3);
  throw UnsupportedError("unknown function preset '" + std::string(name) + "'");
}

std::string TestFunction::describe() const {
  char buf[96];
  switch (family_) {
    case FunctionFamily::Sine:
      std::snprintf(buf, sizeof buf, "sin(%.17g*x)", beta_);
      return buf;
    case FunctionFamily::Cosine:
      std::snprintf(buf, sizeof buf, "cos(%.17g*x)", beta_);
      return buf;
    case FunctionFamily::Exponential:
      std::snprintf(buf, sizeof buf, "exp(%.17g*x)", beta_);
      return buf;
    case FunctionFamily::ShiftedPower:
      std::snprintf(buf, sizeof buf, "(x %c %.17g)^%d", beta_ < 0.0 ? '-' : '+', std::abs(beta_), n_);
      return buf;
    case FunctionFamily::Expression:
      return expr_->to_string();
  }
  return {};
}

double TestFunction::value(double x) const {
  switch (family_) {
    case FunctionFamily::Sine:
      return std::sin(beta_ * x);
    case FunctionFamily::Cosine:
      return std::cos(beta_ * x);
    case FunctionFamily::Exponential:
      return std::exp(beta_ * x);
    case FunctionFamily::ShiftedPower:
      return ipow(x + beta_, n_);
    case FunctionFamily::Expression:
      return expr_->evaluate(x);
  }
  return 0.0;
}

double TestFunction::first(double x) const {
  switch (family_) {
    case FunctionFamily::Sine:
      return beta_ * std::cos(beta_ * x);
    case FunctionFamily::Cosine:
      return -beta_ * std::sin(beta_ * x);
    case FunctionFamily::Exponential:
      return beta_ * std::exp(beta_ * x);
    case FunctionFamily::ShiftedPower:
      return n_ == 0 ? 0.0 : n_ * ipow(x + beta_, n_ - 1);
    case FunctionFamily::Expression: {
      const double h = kDiffStep;
      return (value(x - 2 * h) - 8 * value(x - h) + 8 * value(x + h) - value(x + 2 * h)) / (12 * h);
    }
  }
  return 0.0;
}

double TestFunction::second(double x) const {
  switch (family_) {
    case FunctionFamily::Sine:
      return -beta_ * beta_ * std::sin(beta_ * x);
    case FunctionFamily::Cosine:
      return -beta_ * beta_ * std::cos(beta_ * x);
    case FunctionFamily::Exponential:
      return beta_ * beta_ * std::exp(beta_ * x);
    case FunctionFamily::ShiftedPower:
      return n_ < 2 ? 0.0 : falling(n_, 2) * ipow(x + beta_, n_ - 2);
    case FunctionFamily::Expression: {
      const double h = kDiffStep;
      return (-value(x - 2 * h) + 16 * value(x - h) - 30 * value(x) + 16 * value(x + h) -
              value(x + 2 * h)) /
             (12 * h * h);
    }
  }
  return 0.0;
}

AnalyticField TestFunction::as_field() const {
  return {[f = *this](double x) { return f.value(x); }, [f = *this](double x) { return f.first(x); },
          [f = *this](double x) { return f.second(x); }};
}

bool has_analytic_reference(const TestFunction& fn, const OperatorRequest& req) noexcept {
  if (fn.family() == FunctionFamily::Expression) return false;
  if (req.lower_bound != 0.0) return false;
  if (fn.family() == FunctionFamily::Exponential && !(fn.beta() > 0.0)) return false;
  if (req.op == OperatorKind::RLDerivative && !req.order.is_constant_valued()) return false;
  return true;
}

double analytic_reference(const TestFunction& fn, const OperatorRequest& req, double x) {
  if (!has_analytic_reference(fn, req))
    throw UnsupportedError("no closed form for " + fn.describe() + " under " +
                           std::string(to_string(req.op)) + " (" + req.order.describe() + ")");
  if (!std::isfinite(x) || x < 0.0) throw DomainError("analytic_reference: x must be ≥ a = 0");
  const double alpha = req.order.at(x);
  if (x == 0.0) return req.op == OperatorKind::RLDerivative ? unbounded_at_lower(fn.value(0.0)) : 0.0;
  switch (req.op) {
    case OperatorKind::RLIntegral:
      return rl_closed_form(fn, -alpha, x);
    case OperatorKind::RLDerivative:
      return rl_closed_form(fn, alpha, x);
    case OperatorKind::CaputoDerivative:
      return caputo_closed_form(fn, alpha, x);
  }
  throw UnsupportedError("unknown operator");
}

double quadrature_oracle(const TestFunction& fn, const OperatorRequest& req, double x,
                         const OracleOptions& options) {
  const double a = req.lower_bound;
  if (!std::isfinite(x) || x < a) throw DomainError("quadrature_oracle: x must be ≥ a");
  const double alpha = req.order.at(x);
  auto value = [&fn](double t) { return fn.value(t); };
  auto first = [&fn](double t) { return fn.first(t); };

  QuadratureOptions q;
  q.max_intervals = 20000;
  switch (req.op) {
    case OperatorKind::RLIntegral:
      q.abs_tol = options.abs_tol * gamma(alpha) * 0.1;
      return kernel_integral(value, alpha, a, x, q) / gamma(alpha);
    case OperatorKind::CaputoDerivative:
      q.abs_tol = options.abs_tol * gamma(1.0 - alpha) * 0.1;
      return kernel_integral(first, 1.0 - alpha, a, x, q) / gamma(1.0 - alpha);
    case OperatorKind::RLDerivative:
      break;
  }

  const double fa = fn.value(a);
  if (x == a) return unbounded_at_lower(fa);
  // The difference quotient amplifies quadrature error by 1/step, hence the tight tolerances.
  // Expression derivatives carry finite-difference noise near 1e-13, which caps what the
  // inner quadrature can resolve.
  const bool noisy = fn.family() == FunctionFamily::Expression;
  q.abs_tol = noisy ? 1e-13 : 1e-15;
  q.rel_tol = noisy ? 1e-12 : 1e-14;
  const double step = std::min(options.fd_step, (x - a) / 4.0);
  if (req.order.is_constant_valued()) {
    // D^α f = f(a)(x−a)^{−α}/Γ(1−α) + d/dx [ (1/Γ(2−α)) ∫ (x−x′)^{1−α} f′(x′) dx′ ]
    const double scale = 1.0 / gamma(2.0 - alpha);
    auto inner = [&](double y) { return scale * kernel_integral(first, 2.0 - alpha, a, y, q); };
    return fa * std::pow(x - a, -alpha) / gamma(1.0 - alpha) + five_point(inner, x, step);
  }
  // Type-I variable order: α moves with the evaluation point, so the whole
  // I^{1−α(y)} f (y) is differentiated.
  auto whole = [&](double y) {
    const double ay = req.order.at(y);
    return (fa * std::pow(y - a, 1.0 - ay) + kernel_integral(first, 2.0 - ay, a, y, q)) / gamma(2.0 - ay);
  };
  return five_point(whole, x, step);
}

GateReport dual_oracle_gate(const TestFunction& fn, const OperatorRequest& req, double a, double b,
                            std::size_t points, double tolerance) {
  if (points < 2) throw DomainError("dual_oracle_gate: need at least two points");
  GateReport report;
  report.tolerance = tolerance;
  OracleOptions options;
  options.fd_step = 1e-4 * (b - a);
  for (std::size_t k = 0; k < points; ++k) {
    const double x = k + 1 == points ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1);
    const double closed = analytic_reference(fn, req, x);
    const double brute = quadrature_oracle(fn, req, x, options);
    if (!std::isfinite(closed) || !std::isfinite(brute)) {
      ++report.skipped;
      continue;
    }
    ++report.compared;
    const double diff = std::abs(closed - brute);
    if (diff > report.max_abs_diff) {
      report.max_abs_diff = diff;
      report.worst_x = x;
    }
  }
  report.passed = report.compared > 0 && report.max_abs_diff < tolerance;
  return report;
}

}  // namespace fracsph
