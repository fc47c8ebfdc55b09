#include <cmath>
#include <random>

#include "doctest.h"
#include "fracsph/error.hpp"
#include "fracsph/kernel.hpp"
#include "fracsph/quadrature.hpp"

using fracsph::CubicKernel;

TEST_SUITE("kernel") {
  TEST_CASE("point values at the branch anchors") {
    const CubicKernel k(1.0);
    CHECK(k.value(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(k.value(1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(k.value(2.0) == 0.0);
    CHECK(k.value(-3.5) == 0.0);
    CHECK(k.support_radius() == 2.0);
  }

  TEST_CASE("value scales with 1/h and stays even") {
    const CubicKernel k(0.25);
    CHECK(k.normalization() == 4.0);
    CHECK(k.value(0.0) == doctest::Approx(4.0 * 2.0 / 3.0));
    for (double r : {0.01, 0.1, 0.3, 0.49}) CHECK(k.value(r) == k.value(-r));
  }

  TEST_CASE("gradient anchors") {
    const CubicKernel k(1.0);
    CHECK(k.gradient(0.0) == 0.0);
    CHECK(k.gradient(2.0) == 0.0);
    CHECK(k.gradient(0.5) == doctest::Approx(-0.625).epsilon(1e-15));
    const double fd = (k.value(0.5 + 1e-6) - k.value(0.5 - 1e-6)) / 2e-6;
    CHECK(fd == doctest::Approx(-0.625).epsilon(1e-8));
  }

  TEST_CASE("cumulative anchors") {
    const CubicKernel k(1.0);
    CHECK(k.cumulative(0.0) == 0.5);
    CHECK(k.cumulative(2.0) == 1.0);
    CHECK(k.cumulative(-2.0) == 0.0);
    CHECK(k.cumulative(1.0) == doctest::Approx(23.0 / 24.0).epsilon(1e-15));
    const auto q = fracsph::integrate_adaptive([&](double r) { return k.value(r); }, -2.0, 1.0,
                                               {1e-14, 0.0, 1000});
    CHECK(q.value == doctest::Approx(23.0 / 24.0).epsilon(1e-13));
  }

  TEST_CASE("bad inputs are rejected") {
    CHECK_THROWS_AS(CubicKernel(0.0), fracsph::ConstructionError);
    CHECK_THROWS_AS(CubicKernel(-1.0), fracsph::ConstructionError);
    CHECK_THROWS_AS(CubicKernel(NAN), fracsph::ConstructionError);
    try {
      CubicKernel bad(-1.0);
    } catch (const fracsph::ConstructionError& e) {
      CHECK(e.parameter() == "h");
    }
    const CubicKernel k(1.0);
    CHECK_THROWS_AS(k.value(NAN), fracsph::DomainError);
    CHECK_THROWS_AS(k.gradient(INFINITY), fracsph::DomainError);
    CHECK_THROWS_AS(k.cumulative(-INFINITY), fracsph::DomainError);
  }

  TEST_CASE("gradient matches central differences on a million random distances") {
    const CubicKernel k(0.7);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    const double step = 1e-6;
    int checked = 0;
    for (int n = 0; n < 1000000; ++n) {
      const double r = dist(rng);
      const double z = std::abs(r) / k.h();
      // stay off the joints at z = 0, 1, 2 where the third derivative jumps
      if (z < 1e-3 || std::abs(z - 1.0) < 1e-3 || z > 2.0 - 1e-3) continue;
      const double g = k.gradient(r);
      const double fd = (k.value(r + step) - k.value(r - step)) / (2.0 * step);
      REQUIRE(std::abs(fd - g) <= 1e-6 * std::abs(g) + 1e-8);
      ++checked;
    }
    CHECK(checked > 900000);
  }

  TEST_CASE("cumulative derivative is the kernel") {
    const CubicKernel k(1.3);
    const double step = 1e-5;
    for (double r = -2.59; r < 2.6; r += 0.0371) {
      const double fd = (k.cumulative(r + step) - k.cumulative(r - step)) / (2.0 * step);
      CHECK(std::abs(fd - k.value(r)) < 1e-8);
    }
  }

  TEST_CASE("cumulative is antisymmetric about one half and monotone") {
    double previous = 0.0;
    for (double z = -2.5; z <= 2.5; z += 0.001) {
      CHECK(std::abs(CubicKernel::cumulative_scaled(z) + CubicKernel::cumulative_scaled(-z) - 1.0) < 1e-12);
      const double psi = CubicKernel::cumulative_scaled(z);
      CHECK(psi >= previous);
      previous = psi;
    }
  }

  TEST_CASE("kernel integrates to one") {
    const CubicKernel k(0.9);
    double total = 0.0;
    // one panel per polynomial piece, where Gauss-Kronrod is exact
    for (int piece = -2; piece < 2; ++piece)
      total += fracsph::integrate_adaptive([&](double r) { return k.value(r); }, piece * k.h(),
                                           (piece + 1) * k.h())
                   .value;
    CHECK(std::abs(total - 1.0) < 1e-12);
  }
}
