#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fracsph/domain.hpp"
#include "fracsph/error.hpp"
#include "fracsph/sph.hpp"

using namespace fracsph;
using std::numbers::pi;

namespace {

ParticleDomain1D domain_on(double a, double b, double s = 0.0125, VirtualLayer layer = VirtualLayer::Full) {
  const auto n = static_cast<std::size_t>(std::llround((b - a) / s)) + 1;
  return build_domain(a, b, n, 1.1 * s, 1.0, layer);
}

FieldSamples sample(const ParticleDomain1D& d, double (*f)(double)) {
  return sample_field(d, [f](double x) { return f(x); });
}

}  // namespace

TEST_SUITE("sph_core") {
  TEST_CASE("field samples validate their input") {
    const auto d = domain_on(0.0, 1.0);
    CHECK_THROWS_AS(FieldSamples(d, std::vector<double>(d.size() - 1, 0.0)), DomainError);
    std::vector<double> values(d.size(), 0.0);
    values[3] = NAN;
    CHECK_THROWS_AS(FieldSamples(d, values), DomainError);
  }

  TEST_CASE("virtual fill modes") {
    const auto d = domain_on(0.0, 1.0);
    auto f = [](double x) { return x + 2.0; };
    const auto analytic = sample_field(d, f, VirtualField::Analytic);
    const auto zero = sample_field(d, f, VirtualField::Zero);
    const auto mirror = sample_field(d, f, VirtualField::Mirror);
    const auto x = d.positions();
    CHECK(analytic[0] == doctest::Approx(x[0] + 2.0));
    CHECK(zero[0] == 0.0);
    CHECK(mirror[0] == doctest::Approx(-x[0] + 2.0));
    CHECK(mirror[d.size() - 1] == doctest::Approx(2.0 - x[d.size() - 1] + 2.0));
    CHECK(zero[d.first_real()] == 2.0);
  }

  TEST_CASE("function approximation") {
    const auto d = domain_on(0.0, 5.0);
    const auto one = sample(d, [](double) { return 1.0; });
    const auto none = sample(d, [](double) { return 0.0; });
    const auto ident = sample(d, [](double x) { return x; });
    CHECK(std::abs(approximate_function(d, one, 2.5) - 1.0) <= 1e-3);
    CHECK(std::abs(approximate_function(d, one, 1.234567) - 1.0) <= 1e-3);
    CHECK(approximate_function(d, none, 2.5) == 0.0);
    // Odd moments cancel on the symmetric window, so the only residual is
    // x times the partition-of-unity defect (about 3.9e-4 at h = 1.1 s).
    const double xi = d.real_positions()[137];
    const double unity = approximate_function(d, one, xi);
    CHECK(approximate_function(d, ident, xi) == doctest::Approx(xi * unity).epsilon(1e-13));
    CHECK(std::abs(approximate_function(d, ident, xi) - xi) <= 1e-3 * xi);
  }

  TEST_CASE("function approximation range and empty support") {
    const auto d = domain_on(0.0, 1.0);
    const auto one = sample(d, [](double) { return 1.0; });
    CHECK_THROWS_AS(approximate_function(d, one, -1.0), DomainError);
    CHECK_THROWS_AS(approximate_function(d, one, 1.5), DomainError);
    const auto bare = domain_on(0.0, 1.0, 0.0125, VirtualLayer::None);
    const auto bare_one = sample(bare, [](double) { return 1.0; });
    CHECK_THROWS_AS(approximate_function(bare, bare_one, -bare.kernel().support_radius()), EvaluationError);
  }

  TEST_CASE("correction factors") {
    const auto d = domain_on(0.0, 5.0);
    const auto c = correction_factors(d);
    REQUIRE(c.values.size() == d.n_real());
    for (double v : c.values) {
      CHECK(std::isfinite(v));
      CHECK(std::abs(v - 1.0) < 0.05);
    }
    // symmetric neighbours give the same factor at mirrored particles
    CHECK(c[10] == doctest::Approx(c[d.n_real() - 11]).epsilon(1e-12));

    const auto bare = domain_on(0.0, 5.0, 0.0125, VirtualLayer::None);
    const auto cb = correction_factors(bare);
    CHECK(std::abs(cb[0] - 1.0) > 0.05);
    CHECK(std::abs(cb[200] - 1.0) < 0.05);
  }

  TEST_CASE("vanishing moment names the particle") {
    // 2h < s: every support holds only the particle itself
    const auto d = build_domain(0.0, 1.0, 11, 0.04);
    CHECK_THROWS_WITH_AS(correction_factors(d), doctest::Contains("particle"), EvaluationError);
  }

  TEST_CASE("corrected gradient is exact on affine fields, boundary included") {
    for (auto layer : {VirtualLayer::Full, VirtualLayer::None}) {
      const auto d = domain_on(0.0, 5.0, 0.0125, layer);
      const auto f = sample_field(d, [](double x) { return 3.0 - 1.7 * x; });
      const auto c = correction_factors(d);
      for (std::size_t i = 0; i < d.n_real(); ++i)
        CHECK(std::abs(corrected_gradient(d, f, c, i) + 1.7) <= 1e-10 * 1.7);
    }
  }

  TEST_CASE("corrected gradient of constants and of sin") {
    const auto d = domain_on(0.0, 5.0);
    const auto c = correction_factors(d);
    const auto k = sample(d, [](double) { return 4.2; });
    const auto s = sample(d, [](double x) { return std::sin(pi * x); });
    for (std::size_t i = 0; i < d.n_real(); ++i) CHECK(std::abs(corrected_gradient(d, k, c, i)) < 1e-12);
    for (std::size_t i = 5; i + 5 < d.n_real(); ++i) {
      const double x = d.real_positions()[i];
      CHECK(std::abs(corrected_gradient(d, s, c, i) - pi * std::cos(pi * x)) < 1e-3);
    }
    CHECK_THROWS_AS(corrected_gradient(d, s, c, d.n_real()), DomainError);
  }

  TEST_CASE("gradient field covers virtual particles") {
    const auto d = domain_on(0.0, 1.0);
    const auto f = sample_field(d, [](double x) { return 2.0 * x + 1.0; });
    const auto g = gradient_field(d, f.values());
    REQUIRE(g.size() == d.size());
    for (double v : g) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  }

  TEST_CASE("integration weight") {
    const auto d = domain_on(0.0, 5.0);
    const std::size_t mid = d.global_index(200);  // x = 2.5
    CHECK(integration_weight(d, 2.5, mid) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(integration_weight(d, 5.0, mid) == 1.0);
    CHECK(integration_weight(d, 5.0, d.first_real()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(integration_weight(d, 1.0, d.global_index(300)) == 0.0);
    CHECK(integration_weight(d, 5.0, d.first_real(), WeightBounds::Cumulative) == 1.0);
    CHECK_THROWS_AS(integration_weight(d, 5.5, mid), DomainError);
    CHECK_THROWS_AS(integration_weight(d, -0.1, mid), DomainError);
  }

  TEST_CASE("integration weight is monotone in the upper bound") {
    const auto d = domain_on(0.0, 1.0);
    for (std::size_t g = 0; g < d.size(); g += 3) {
      double previous = 0.0;
      for (double upper = 0.0; upper <= 1.0; upper += 0.003) {
        const double w = integration_weight(d, upper, g);
        CHECK(w >= previous);
        CHECK(w <= 1.0);
        previous = w;
      }
    }
  }

  TEST_CASE("standard integration") {
    const auto d = domain_on(0.0, 5.0);
    const auto one = sample(d, [](double) { return 1.0; });
    CHECK(std::abs(sph_integrate_standard(d, one, 5.0) - 5.0) <= 5e-3);
    CHECK(std::abs(sph_integrate_standard(d, one, 0.0)) <= 1e-6);

    const auto unit = domain_on(0.0, 1.0);
    const auto ident = sample(unit, [](double x) { return x; });
    CHECK(std::abs(sph_integrate_standard(unit, ident, 1.0) - 0.5) <= 1e-3);
    CHECK_THROWS_AS(sph_integrate_standard(unit, ident, 1.01), DomainError);
  }

  TEST_CASE("integration is additive over adjacent intervals") {
    const auto d = domain_on(0.0, 5.0);
    const auto f = sample(d, [](double x) { return std::exp(-x) + std::cos(x); });
    auto exact = [](double lo, double hi) {
      return (std::exp(-lo) - std::exp(-hi)) + (std::sin(hi) - std::sin(lo));
    };
    const double tol = 5e-3;
    for (auto [u1, u2] : {std::pair{0.7, 2.1}, std::pair{1.3, 4.9}, std::pair{0.0, 3.3}}) {
      const double diff = sph_integrate_standard(d, f, u2) - sph_integrate_standard(d, f, u1);
      CHECK(std::abs(diff - exact(u1, u2)) <= 2.0 * tol);
    }
  }

  TEST_CASE("auxiliary integration") {
    const auto d = domain_on(0.0, 5.0);
    const auto aux = auxiliary_particles(d, AuxiliaryLayer::WithVirtual);
    const auto one = sample(d, [](double) { return 1.0; });
    const double standard = sph_integrate_standard(d, one, 5.0);
    const double midpoint = sph_integrate_auxiliary(d, aux, one, 5.0);
    CHECK(std::abs(midpoint - standard) <= 1e-3 * std::abs(standard));

    const auto unit = domain_on(0.0, 1.0);
    const auto unit_aux = auxiliary_particles(unit, AuxiliaryLayer::WithVirtual);
    const auto ident = sample(unit, [](double x) { return x; });
    CHECK(std::abs(sph_integrate_auxiliary(unit, unit_aux, ident, 1.0) - 0.5) <= 1e-4);
  }

  TEST_CASE("auxiliary midpoints inside [a, b] lose kernel mass at bounded ends") {
    const auto d = domain_on(0.0, 5.0);
    const auto aux = auxiliary_particles(d);
    const auto one = sample(d, [](double) { return 1.0; });
    // one midpoint at s/2 and one at 3s/2 from each end carry Ψ mass that spills outside
    const double z1 = 0.5 / 1.1;
    const double z2 = 1.5 / 1.1;
    const double lost = d.spacing() * (CubicKernel::cumulative_scaled(-z1) + CubicKernel::cumulative_scaled(-z2));
    CHECK(sph_integrate_auxiliary(d, aux, one, 5.0) == doctest::Approx(5.0 - 2.0 * lost).epsilon(1e-12));
  }

  TEST_CASE("auxiliary integration with exact midpoint values") {
    const auto d = domain_on(0.0, 1.0);
    const auto aux = auxiliary_particles(d, AuxiliaryLayer::WithVirtual);
    const auto f = sample(d, [](double x) { return x * x; });
    std::vector<double> exact(aux.size());
    for (std::size_t j = 0; j < aux.size(); ++j) exact[j] = aux.positions[j] * aux.positions[j];
    const double averaged = sph_integrate_auxiliary(d, aux, f, 1.0);
    const double pointwise = sph_integrate_auxiliary(d, aux, f, 1.0, WeightBounds::Bounded, exact);
    CHECK(std::abs(pointwise - 1.0 / 3.0) < std::abs(averaged - 1.0 / 3.0));
    CHECK(std::abs(pointwise - 1.0 / 3.0) < 1e-4);
    CHECK_THROWS_AS(sph_integrate_auxiliary(d, aux, f, 1.0, WeightBounds::Bounded,
                                            std::span<const double>(exact).first(3)),
                    DomainError);
  }

  TEST_CASE("auxiliary and standard agree on smooth integrands") {
    const auto d = domain_on(0.0, 5.0);
    const auto aux = auxiliary_particles(d, AuxiliaryLayer::WithVirtual);
    for (auto fn : {+[](double x) { return std::exp(0.3 * x); }, +[](double x) { return 2.0 + std::sin(x); },
                    +[](double x) { return 1.0 + x * x; }}) {
      const auto f = sample(d, fn);
      for (double upper : {1.0, 2.5, 5.0}) {
        const double s = sph_integrate_standard(d, f, upper);
        const double m = sph_integrate_auxiliary(d, aux, f, upper);
        CHECK(std::abs(s - m) <= 1e-3 * std::abs(s));
      }
    }
  }

  TEST_CASE("Brookshaw second derivative") {
    const auto d = domain_on(0.0, 5.0);
    const auto k = sample(d, [](double) { return -3.0; });
    const auto sq = sample(d, [](double x) { return x * x; });
    const auto sn = sample(d, [](double x) { return std::sin(pi * x); });
    for (std::size_t i = 0; i < d.n_real(); ++i) CHECK(brookshaw_second_derivative(d, k, i) == 0.0);
    for (std::size_t i = 10; i + 10 < d.n_real(); i += 7)
      CHECK(std::abs(brookshaw_second_derivative(d, sq, i) - 2.0) <= 0.05);
    for (std::size_t i = 10; i + 10 < d.n_real(); ++i) {
      const double x = d.real_positions()[i];
      const double exact = -pi * pi * std::sin(pi * x);
      if (std::abs(std::sin(pi * x)) < 0.2) continue;
      CHECK(std::abs(brookshaw_second_derivative(d, sn, i) - exact) <= 0.02 * std::abs(exact));
    }
    CHECK_THROWS_AS(brookshaw_second_derivative(d, sq, d.n_real()), DomainError);
    CHECK(default_brookshaw_eta(2.0) == doctest::Approx(0.02));
  }

  TEST_CASE("Brookshaw raw versus corrected gradient") {
    const auto d = domain_on(0.0, 5.0);
    const auto sq = sample(d, [](double x) { return x * x; });
    BrookshawOptions raw;
    raw.corrected = false;
    const double corrected = brookshaw_second_derivative(d, sq, 200);
    const double plain = brookshaw_second_derivative(d, sq, 200, raw);
    CHECK(plain == doctest::Approx(corrected / correction_factor_at(d, d.global_index(200))).epsilon(1e-12));
    const auto field = brookshaw_field(d, sq.values());
    CHECK(field[d.global_index(200)] == doctest::Approx(corrected).epsilon(1e-14));
  }

  TEST_CASE("every operation is linear in the field") {
    const auto d = domain_on(0.0, 2.0);
    const auto aux = auxiliary_particles(d, AuxiliaryLayer::WithVirtual);
    const auto c = correction_factors(d);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> p(d.size()), q(d.size()), mix(d.size());
      const double alpha = u(rng), beta = u(rng);
      for (std::size_t g = 0; g < d.size(); ++g) {
        p[g] = u(rng);
        q[g] = u(rng);
        mix[g] = alpha * p[g] + beta * q[g];
      }
      const FieldSamples fp(d, p), fq(d, q), fm(d, mix);
      const std::size_t i = 17 + static_cast<std::size_t>(trial) * 11;
      auto close = [](double lhs, double rhs) { CHECK(std::abs(lhs - rhs) <= 1e-12 * (1.0 + std::abs(rhs))); };
      close(approximate_function(d, fm, 0.777), alpha * approximate_function(d, fp, 0.777) + beta * approximate_function(d, fq, 0.777));
      close(corrected_gradient(d, fm, c, i), alpha * corrected_gradient(d, fp, c, i) + beta * corrected_gradient(d, fq, c, i));
      close(sph_integrate_standard(d, fm, 1.3), alpha * sph_integrate_standard(d, fp, 1.3) + beta * sph_integrate_standard(d, fq, 1.3));
      close(sph_integrate_auxiliary(d, aux, fm, 1.3),
            alpha * sph_integrate_auxiliary(d, aux, fp, 1.3) + beta * sph_integrate_auxiliary(d, aux, fq, 1.3));
      close(brookshaw_second_derivative(d, fm, i),
            alpha * brookshaw_second_derivative(d, fp, i) + beta * brookshaw_second_derivative(d, fq, i));
    }
  }
}
