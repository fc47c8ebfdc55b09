#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fracsph/expr.hpp"
#include "fracsph/operator.hpp"

namespace fracsph {

enum class FunctionFamily { Sine, Cosine, Exponential, ShiftedPower, Expression };

/// A test function f(x) with its first two derivatives.
///
/// Closed-form families: sin(βx), cos(βx), exp(βx), (x + β)^n. Expression
/// functions differentiate by five-point central differences (step 1e-3),
/// so they must be evaluable slightly beyond the points where they are used.
class TestFunction {
 public:
  static TestFunction sine(double beta);
  static TestFunction cosine(double beta);
  static TestFunction exponential(double beta);
  static TestFunction shifted_power(double beta, int n);
  static TestFunction expression(Expr expr);

  /// sin_pi_x, cos_pi_x, exp_x, shifted_cubic ((x − 1)³). Throws UnsupportedError otherwise.
  static TestFunction preset(std::string_view name);

  FunctionFamily family() const noexcept { return family_; }
  double beta() const noexcept { return beta_; }
  int power() const noexcept { return n_; }
  std::string describe() const;

  double value(double x) const;
  double first(double x) const;
  double second(double x) const;

  AnalyticField as_field() const;

 private:
  TestFunction(FunctionFamily family, double beta, int n, std::optional<Expr> expr)
      : family_(family), beta_(beta), n_(n), expr_(std::move(expr)) {}

  FunctionFamily family_;
  double beta_;
  int n_;
  std::optional<Expr> expr_;
};

/// Closed-form operator value at x (lower bound a = 0 only).
///
/// Covers the four closed-form families for the RL integral and the Caputo
/// derivative (constant or variable order, α → α(x)) and the RL derivative
/// for constant order. Throws UnsupportedError for anything else. The RL
/// derivative at x = a returns ±∞ when f(a) ≠ 0.
double analytic_reference(const TestFunction& fn, const OperatorRequest& req, double x);

struct OracleOptions {
  /// Absolute tolerance of the operator value (RL integral, Caputo).
  double abs_tol = 1e-10;
  /// Central-difference step for RL derivatives; shrunk to (x − a)/4 near a.
  double fd_step = 5e-4;
};

/// Brute-force value of the defining integral.
///
/// ∫_a^x (x − x′)^{p−1} g(x′) dx′ is rewritten as (1/p) ∫_0^{(x−a)^p} g(x − t^{1/p}) dt,
/// which is smooth, and integrated adaptively. RL derivatives differentiate the
/// non-singular inner integral with a five-point stencil.
double quadrature_oracle(const TestFunction& fn, const OperatorRequest& req, double x,
                         const OracleOptions& options = {});

struct GateReport {
  double max_abs_diff = 0.0;
  double worst_x = 0.0;
  std::size_t compared = 0;
  std::size_t skipped = 0;  // points where either oracle is non-finite
  double tolerance = 0.0;
  bool passed = false;
};

/// Compares analytic_reference and quadrature_oracle on `points` evenly spaced x in [a, b].
GateReport dual_oracle_gate(const TestFunction& fn, const OperatorRequest& req, double a, double b,
                            std::size_t points = 21, double tolerance = 1e-7);

/// True when analytic_reference covers (fn, req) with lower bound a.
bool has_analytic_reference(const TestFunction& fn, const OperatorRequest& req) noexcept;

}  // namespace fracsph
