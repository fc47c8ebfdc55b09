#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fracsph/analytic.hpp"
#include "fracsph/error.hpp"

using namespace fracsph;

namespace {

OperatorRequest request(OperatorKind op, double alpha = 0.75) {
  OperatorRequest r;
  r.op = op;
  r.order = OrderSpec::constant(alpha);
  return r;
}

OperatorRequest variable_request(OperatorKind op) {
  OperatorRequest r;
  r.op = op;
  r.order = OrderSpec::variable(parse_expression("0.5 + 0.3*sin(4*pi*x)"));
  return r;
}

struct Frozen {
  TestFunction fn;
  OperatorRequest req;
  double x;
  double value;
};

// 40-digit mpmath values: closed form and substituted quadrature agree to every printed digit
std::vector<Frozen> frozen_values() {
  using K = OperatorKind;
  const auto sin_pi = TestFunction::preset("sin_pi_x");
  const auto cos_pi = TestFunction::preset("cos_pi_x");
  const auto exp_x = TestFunction::preset("exp_x");
  const auto cubic = TestFunction::preset("shifted_cubic");
  return {
      {sin_pi, request(K::RLIntegral), 1.0, 0.645618675528571391023801285517},
      {cos_pi, request(K::RLIntegral), 2.0, 0.153967914508176812617274272346},
      {exp_x, request(K::RLIntegral), 1.5, 3.82019376075479379959096286018},
      {cubic, request(K::RLIntegral), 2.5, 1.48900135189746622253064627435},
      {TestFunction::shifted_power(2.0, 2), request(K::RLIntegral, 0.4), 1.2, 10.0449939741485586994837688950},
      {sin_pi, request(K::CaputoDerivative), 1.0, -2.23059854287686054980342977734},
      {cos_pi, request(K::CaputoDerivative), 2.0, 0.743548915093825176976933063556},
      {exp_x, request(K::CaputoDerivative), 1.0, 2.53365304954759848222813897251},
      {cubic, request(K::CaputoDerivative), 2.0, 2.53654840302384467346558136547},
      {TestFunction::exponential(0.5), request(K::CaputoDerivative, 0.4), 4.0, 5.26401144640319164546262585539},
      {sin_pi, request(K::RLDerivative), 1.0, -2.23059854287686054980342977734},
      {cos_pi, request(K::RLDerivative), 1.0, -0.880577980400342264047498032896},
      {cos_pi, request(K::RLDerivative), 1.5, 2.18913039532765324855703597553},
      {exp_x, request(K::RLDerivative), 2.0, 7.42532976190733849616600835759},
      {cubic, request(K::RLDerivative), 3.0, 11.2044094358704467588277303360},
      {TestFunction::sine(2.3), request(K::RLDerivative, 0.4), 0.7, 0.972292132516057620404410765589},
      {sin_pi, variable_request(K::RLIntegral), 0.3, 0.479629165607783701614264139793},
      {cos_pi, variable_request(K::CaputoDerivative), 0.3, -0.789581532939972222601852714062},
  };
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("closed forms match frozen high-precision values") {
    for (const auto& f : frozen_values()) {
      CAPTURE(f.fn.describe());
      CAPTURE(to_string(f.req.op));
      CAPTURE(f.x);
      const double got = analytic_reference(f.fn, f.req, f.x);
      CHECK(std::abs(got - f.value) <= 1e-12 * std::max(1.0, std::abs(f.value)));
    }
  }

  TEST_CASE("quadrature oracle matches frozen values") {
    for (const auto& f : frozen_values()) {
      CAPTURE(f.fn.describe());
      CAPTURE(to_string(f.req.op));
      CAPTURE(f.x);
      const double tol = f.req.op == OperatorKind::RLDerivative ? 1e-8 : 1e-10;
      CHECK(std::abs(quadrature_oracle(f.fn, f.req, f.x) - f.value) <= tol * std::max(1.0, std::abs(f.value)));
    }
  }

  TEST_CASE("elementary identities") {
    const double g175 = 0.919062526848883233846823727522;
    const auto one = TestFunction::shifted_power(1.0, 0);
    CHECK(analytic_reference(one, request(OperatorKind::RLIntegral), 1.0) == doctest::Approx(1.0 / g175).epsilon(1e-13));
    CHECK(analytic_reference(one, request(OperatorKind::CaputoDerivative), 2.0) == 0.0);
    CHECK(analytic_reference(one, request(OperatorKind::RLDerivative), 1.0) ==
          doctest::Approx(0.275815662830209314359945539988).epsilon(1e-13));
    const auto x = TestFunction::shifted_power(0.0, 1);
    CHECK(analytic_reference(x, request(OperatorKind::CaputoDerivative), 1.0) ==
          doctest::Approx(1.10326265132083725743978215995).epsilon(1e-13));
  }

  TEST_CASE("values at the lower bound") {
    const auto cos_pi = TestFunction::preset("cos_pi_x");
    const auto sin_pi = TestFunction::preset("sin_pi_x");
    CHECK(analytic_reference(cos_pi, request(OperatorKind::RLIntegral), 0.0) == 0.0);
    CHECK(analytic_reference(cos_pi, request(OperatorKind::CaputoDerivative), 0.0) == 0.0);
    CHECK(analytic_reference(sin_pi, request(OperatorKind::RLDerivative), 0.0) == 0.0);
    CHECK(analytic_reference(TestFunction::preset("shifted_cubic"), request(OperatorKind::CaputoDerivative), 0.0) == 0.0);
    CHECK(std::isinf(analytic_reference(cos_pi, request(OperatorKind::RLDerivative), 0.0)));
    CHECK(std::isinf(analytic_reference(TestFunction::preset("shifted_cubic"), request(OperatorKind::RLDerivative), 0.0)));
  }

  TEST_CASE("unsupported combinations") {
    const auto sin_pi = TestFunction::preset("sin_pi_x");
    const auto expr = TestFunction::expression(parse_expression("x^2"));
    CHECK_THROWS_AS(analytic_reference(sin_pi, variable_request(OperatorKind::RLDerivative), 1.0), UnsupportedError);
    CHECK_THROWS_AS(analytic_reference(expr, request(OperatorKind::RLIntegral), 1.0), UnsupportedError);
    OperatorRequest shifted = request(OperatorKind::RLIntegral);
    shifted.lower_bound = 1.0;
    CHECK_THROWS_AS(analytic_reference(sin_pi, shifted, 2.0), UnsupportedError);
    CHECK_FALSE(has_analytic_reference(sin_pi, variable_request(OperatorKind::RLDerivative)));
    CHECK_FALSE(has_analytic_reference(expr, request(OperatorKind::CaputoDerivative)));
    CHECK(has_analytic_reference(sin_pi, variable_request(OperatorKind::CaputoDerivative)));
    CHECK_THROWS_AS(TestFunction::preset("tan_x"), UnsupportedError);
    CHECK_FALSE(has_analytic_reference(TestFunction::exponential(-0.5), request(OperatorKind::CaputoDerivative)));
    CHECK_THROWS_AS(analytic_reference(sin_pi, request(OperatorKind::RLIntegral), -0.5), DomainError);
  }

  TEST_CASE("expression functions work with the quadrature oracle") {
    const auto expr = TestFunction::expression(parse_expression("sin(pi*x)"));
    const auto sin_pi = TestFunction::preset("sin_pi_x");
    for (auto op : {OperatorKind::RLIntegral, OperatorKind::CaputoDerivative, OperatorKind::RLDerivative}) {
      const double want = analytic_reference(sin_pi, request(op), 1.3);
      CHECK(std::abs(quadrature_oracle(expr, request(op), 1.3) - want) < 1e-7);
    }
    CHECK(expr.first(0.25) == doctest::Approx(std::numbers::pi * std::cos(std::numbers::pi / 4)).epsilon(1e-9));
    CHECK(expr.second(0.25) ==
          doctest::Approx(-std::numbers::pi * std::numbers::pi * std::sin(std::numbers::pi / 4)).epsilon(1e-6));
  }

  TEST_CASE("dual oracle gate on every covered pair") {
    using K = OperatorKind;
    for (const char* name : {"sin_pi_x", "cos_pi_x", "exp_x", "shifted_cubic"}) {
      const auto fn = TestFunction::preset(name);
      for (K op : {K::RLIntegral, K::CaputoDerivative, K::RLDerivative}) {
        CAPTURE(name);
        CAPTURE(to_string(op));
        const auto report = dual_oracle_gate(fn, request(op), 0.0, 5.0);
        CHECK(report.passed);
        CHECK(report.max_abs_diff <= 1e-7);
        CHECK(report.compared + report.skipped == 21);
        if (op != K::RLDerivative) {
          CHECK(report.skipped == 0);
          const auto vo = dual_oracle_gate(fn, variable_request(op), 0.0, 5.0);
          CHECK(vo.passed);
        }
      }
    }
    CHECK_THROWS_AS(dual_oracle_gate(TestFunction::preset("sin_pi_x"), variable_request(K::RLDerivative), 0.0, 5.0),
                    UnsupportedError);
  }
}
