#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracsph/error.hpp"
#include "fracsph/quadrature.hpp"

using namespace fracsph;

TEST_SUITE("quadrature") {
  TEST_CASE("polynomial exactness") {
    // Gauss and Kronrod agree up to degree 13, so the first panel is accepted
    const auto r = integrate_adaptive([](double x) { return std::pow(x, 13); }, 0.0, 1.0);
    CHECK(r.value == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
    CHECK(r.intervals == 1);
    const auto k = integrate_adaptive([](double x) { return std::pow(x, 22); }, 0.0, 1.0);
    CHECK(k.value == doctest::Approx(1.0 / 23.0).epsilon(1e-14));
  }

  TEST_CASE("smooth and weakly singular integrands") {
    CHECK(std::abs(integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value - 2.0) < 1e-10);
    CHECK(std::abs(integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0).value - 2.0 / 3.0) < 1e-10);
    const auto r = integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0, {1e-14, 0.0, 1000});
    CHECK(std::abs(r.value - std::sqrt(std::numbers::pi)) < 1e-13);
    CHECK(r.est_error <= 1e-14);
  }

  TEST_CASE("power-law substitution removes the endpoint singularity") {
    // ∫_0^1 (1 − x)^{−3/4} cos x dx with t = (1 − x)^{1/4} becomes 4 ∫_0^1 cos(1 − t⁴) dt
    const auto r = integrate_adaptive([](double t) { return std::cos(1.0 - std::pow(t, 4.0)); }, 0.0, 1.0,
                                      {1e-13, 0.0, 1000});
    // reference from 40-digit quadrature
    CHECK(std::abs(4.0 * r.value - 2.67765798643581145796234980950) < 1e-12);
  }

  TEST_CASE("orientation and empty intervals") {
    CHECK(integrate_adaptive([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
    CHECK(integrate_adaptive([](double x) { return x; }, 2.0, 2.0).value == 0.0);
    CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, INFINITY), DomainError);
  }

  TEST_CASE("unreachable tolerance reports the iteration count") {
    QuadratureOptions tight;
    tight.abs_tol = 1e-14;
    tight.max_intervals = 5;
    try {
      integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(e.iterations() == 5);
    }
    CHECK_THROWS_AS(integrate_adaptive([](double) { return NAN; }, 0.0, 1.0), EvaluationError);
  }
}
