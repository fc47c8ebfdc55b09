#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "fracsph/expr.hpp"
#include "fracsph/sph.hpp"

namespace fracsph {

/// Fractional order: a constant α or a Type-I function α(x), always in (0, 1).
class OrderSpec {
 public:
  static constexpr std::size_t kValidationSamples = 10000;

  /// Throws OrderRangeError unless 0 < alpha < 1.
  static OrderSpec constant(double alpha);
  static OrderSpec variable(Expr alpha);

  bool is_variable() const noexcept { return expr_.has_value(); }
  /// True for a constant order and for a variable expression that never mentions x.
  bool is_constant_valued() const noexcept;
  /// Integer ceiling ⌈α⌉; always 1 for orders in (0, 1).
  int ceiling() const noexcept { return 1; }

  /// α at x. Throws OrderRangeError when the value falls outside (0, 1).
  double at(double x) const;

  /// Samples α on kValidationSamples points of [a, b]; throws OrderRangeError on the first bad one.
  void validate_on(double a, double b) const;

  std::string describe() const;
  const std::optional<Expr>& expression() const noexcept { return expr_; }

 private:
  OrderSpec(double alpha, std::optional<Expr> expr) : alpha_(alpha), expr_(std::move(expr)) {}

  double alpha_;
  std::optional<Expr> expr_;
};

enum class OperatorKind { RLIntegral, RLDerivative, CaputoDerivative };

enum class Formulation {
  Standard,     // power-law kernel applied to f (or f′) directly; singular at x′ = x
  NonSingular,  // integrated by parts; one more derivative, kernel exponent raised by one
};

enum class Integration {
  Standard,   // sum over the real particles
  Auxiliary,  // sum over the midpoint particles
};

/// Where auxiliary-particle integrand values come from.
enum class AuxValues { Average, Exact };

struct OperatorRequest {
  OperatorKind op = OperatorKind::RLIntegral;
  Formulation formulation = Formulation::NonSingular;
  Integration integration = Integration::Standard;
  OrderSpec order = OrderSpec::constant(0.75);
  double lower_bound = 0.0;
  WeightBounds weights = WeightBounds::Cumulative;
  AuxValues aux_values = AuxValues::Average;
  bool gradient_correction = true;
  /// Brookshaw regularization; default_brookshaw_eta(h) when empty.
  std::optional<double> eta;
};

/// Analytic function and its first two derivatives, used for exact auxiliary values.
struct AnalyticField {
  std::function<double(double)> value;
  std::function<double(double)> first;
  std::function<double(double)> second;
};

std::string_view to_string(OperatorKind op) noexcept;
std::string_view to_string(Formulation f) noexcept;
std::string_view to_string(Integration i) noexcept;
std::string_view to_string(WeightBounds w) noexcept;
std::string_view to_string(AuxValues v) noexcept;

}  // namespace fracsph
