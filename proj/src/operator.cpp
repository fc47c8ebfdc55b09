#include "fracsph/operator.hpp"

#include <cmath>
#include <cstdio>

#include "fracsph/error.hpp"

namespace fracsph {

namespace {

double checked_order(double x, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw OrderRangeError(x, alpha);
  return alpha;
}

}  // namespace

OrderSpec OrderSpec::constant(double alpha) {
  checked_order(0.0, alpha);
  return OrderSpec(alpha, std::nullopt);
}

OrderSpec OrderSpec::variable(Expr alpha) { return OrderSpec(0.0, std::move(alpha)); }

bool OrderSpec::is_constant_valued() const noexcept { return !expr_ || expr_->is_constant(); }

double OrderSpec::at(double x) const {
  if (!expr_) return alpha_;
  return checked_order(x, expr_->evaluate(x));
}

void OrderSpec::validate_on(double a, double b) const {
  if (!expr_) return;
  const double step = (b - a) / static_cast<double>(kValidationSamples - 1);
  for (std::size_t k = 0; k < kValidationSamples; ++k) {
    const double x = k + 1 == kValidationSamples ? b : a + static_cast<double>(k) * step;
    at(x);
  }
}

std::string OrderSpec::describe() const {
  if (expr_) return "variable: " + expr_->to_string();
  char buf[40];
  std::snprintf(buf, sizeof buf, "constant: %.17g", alpha_);
  return buf;
}

std::string_view to_string(OperatorKind op) noexcept {
  switch (op) {
    case OperatorKind::RLIntegral:
      return "rl_integral";
    case OperatorKind::RLDerivative:
      return "rl_derivative";
    case OperatorKind::CaputoDerivative:
      return "caputo";
  }
  return "?";
}

std::string_view to_string(Formulation f) noexcept {
  return f == Formulation::Standard ? "standard" : "nonsingular";
}

std::string_view to_string(Integration i) noexcept {
  return i == Integration::Standard ? "standard" : "auxiliary";
}

std::string_view to_string(WeightBounds w) noexcept {
  return w == WeightBounds::Bounded ? "bounded" : "cumulative";
}

std::string_view to_string(AuxValues v) noexcept { return v == AuxValues::Average ? "average" : "exact"; }

}  // namespace fracsph
