#include "fracsph/fracops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "fracsph/error.hpp"
#include "fracsph/parallel.hpp"
#include "fracsph/simd/power_sum.hpp"
#include "fracsph/special.hpp"

namespace fracsph {

namespace {

// Points x′ carrying the integrand: positions ascending, coef_j = V_j · v(x′_j).
struct Participants {
  std::vector<double> pos;
  std::vector<double> coef;
};

enum class Integrand { Value, First, Second };

struct Context {
  const ParticleDomain1D& domain;
  const AuxiliaryParticles& aux;
  const OperatorRequest& req;
  const AnalyticField* exact;
};

Participants make_participants(const Context& ctx, std::span<const double> field, Integrand which) {
  const auto& d = ctx.domain;
  Participants p;
  if (ctx.req.integration == Integration::Auxiliary) {
    p.pos = ctx.aux.positions;
    std::vector<double> values;
    if (ctx.req.aux_values == AuxValues::Exact) {
      if (ctx.exact == nullptr)
        throw EvaluationError("exact auxiliary values requested but no analytic field was supplied");
      const auto& fn = which == Integrand::Value ? ctx.exact->value
                       : which == Integrand::First ? ctx.exact->first
                                                   : ctx.exact->second;
      values.resize(p.pos.size());
      for (std::size_t j = 0; j < p.pos.size(); ++j) values[j] = fn(p.pos[j]);
    } else {
      values = average_to_auxiliary(ctx.aux, field);
    }
    p.coef.resize(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) p.coef[j] = ctx.aux.volumes[j] * values[j];
    return p;
  }

  // Cumulative weights see only the real particles; bounded weights see the virtual layer too.
  std::size_t begin = 0;
  std::size_t end = d.size();
  if (ctx.req.weights == WeightBounds::Cumulative) {
    begin = d.first_real();
    end = begin + d.n_real();
  }
  const auto x = d.positions();
  const auto vol = d.volumes();
  p.pos.assign(x.begin() + static_cast<std::ptrdiff_t>(begin), x.begin() + static_cast<std::ptrdiff_t>(end));
  p.coef.resize(end - begin);
  for (std::size_t j = begin; j < end; ++j) p.coef[j - begin] = vol[j] * field[j];
  return p;
}

// Σ_j coef_j (y − x′_j)^p W̃(y, x′_j) over x′_j < y.
//
// Participants whose weight is exactly one go through the vectorized power
// sum; the few within 2h of y (or of a, for bounded weights) are summed here.
double weighted_power_sum(const Participants& parts, const ParticleDomain1D& d, WeightBounds bounds,
                          double y, double p) {
  const auto& pos = parts.pos;
  const double reach = d.kernel().support_radius();
  const auto index = [&](auto it) { return static_cast<std::size_t>(it - pos.begin()); };
  const std::size_t end = index(std::lower_bound(pos.begin(), pos.end(), y));
  const std::size_t hi = index(std::upper_bound(pos.begin(), pos.end(), y - reach));
  const std::size_t lo = bounds == WeightBounds::Bounded
                             ? index(std::lower_bound(pos.begin(), pos.end(), d.a() + reach))
                             : 0;
  const std::size_t unit_hi = std::max(lo, hi);

  const std::span<const double> all_pos(pos);
  const std::span<const double> all_coef(parts.coef);
  double sum = 0.0;
  if (unit_hi > lo)
    sum = simd::power_sum(y, all_pos.subspan(lo, unit_hi - lo), all_coef.subspan(lo, unit_hi - lo), p);

  auto partial = [&](std::size_t from, std::size_t to) {
    for (std::size_t j = from; j < to; ++j) {
      const double dist = y - pos[j];
      if (!(dist >= simd::kTinyBase)) continue;
      const double w = integration_weight_at(d.kernel(), d.a(), y, pos[j], bounds);
      sum += parts.coef[j] * std::pow(dist, p) * w;
    }
  };
  partial(0, std::min(lo, end));
  partial(unit_hi, end);
  return sum;
}

void check_request(const ParticleDomain1D& d, const OperatorRequest& req, OperatorKind expected) {
  if (req.op != expected) throw EvaluationError("operator request does not match the called operator");
  const double scale = std::max(1.0, std::abs(d.a()));
  if (std::abs(req.lower_bound - d.a()) > 1e-12 * scale)
    throw ConstructionError("lower_bound", "must equal the domain's left bound a");
  if (req.order.is_variable()) req.order.validate_on(d.a(), d.b());
}

std::vector<double> first_derivative(const Context& ctx, std::span<const double> f) {
  return gradient_field(ctx.domain, f, ctx.req.gradient_correction);
}

std::vector<double> second_derivative(const Context& ctx, std::span<const double> f) {
  BrookshawOptions opts;
  opts.eta = ctx.req.eta;
  opts.corrected = ctx.req.gradient_correction;
  return brookshaw_field(ctx.domain, f, opts);
}

OperatorField empty_field(const ParticleDomain1D& d, const OperatorRequest& req) {
  OperatorField out{std::vector<double>(d.real_positions().begin(), d.real_positions().end()),
                    std::vector<double>(d.n_real(), 0.0), std::vector<std::uint8_t>(d.n_real(), 0),
                    req};
  return out;
}

// Fractional integral of order μ(y) at each point y, of either
//   singular:      (1/Γ(μ)) Σ V v_j (y − x′)^{μ−1} W̃
//   non-singular:  (1/Γ(μ+1)) [v(a)(y − a)^μ + Σ V v′_j (y − x′)^μ W̃]
// `parts` carries v (singular) or v′ (non-singular).
struct FractionalIntegral {
  const Context& ctx;
  const Participants& parts;
  Formulation formulation;
  double boundary_value;  // v(a); non-singular only
  bool include_boundary;

  double operator()(double y, double mu) const {
    const double a = ctx.domain.a();
    if (!(y > a)) return 0.0;
    const WeightBounds bounds = ctx.req.weights;
    if (formulation == Formulation::Standard)
      return weighted_power_sum(parts, ctx.domain, bounds, y, mu - 1.0) / gamma(mu);
    double total = weighted_power_sum(parts, ctx.domain, bounds, y, mu);
    if (include_boundary) total += boundary_value * std::pow(y - a, mu);
    return total / gamma(mu + 1.0);
  }
};

void evaluate_at_real(const ParticleDomain1D& d, std::vector<double>& out,
                      const std::function<double(double)>& at) {
  const auto x = d.real_positions();
  parallel_for(x.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = at(x[i]);
  });
}

}  // namespace

OperatorField rl_integral(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                          const FieldSamples& f, const OperatorRequest& req, const AnalyticField* exact) {
  check_request(domain, req, OperatorKind::RLIntegral);
  const Context ctx{domain, aux, req, exact};
  OperatorField out = empty_field(domain, req);
  const double fa = f[domain.first_real()];

  std::vector<double> derivative;
  Participants parts;
  if (req.formulation == Formulation::Standard) {
    parts = make_participants(ctx, f.values(), Integrand::Value);
  } else {
    derivative = first_derivative(ctx, f.values());
    parts = make_participants(ctx, derivative, Integrand::First);
  }
  const FractionalIntegral integral{ctx, parts, req.formulation, fa, true};
  evaluate_at_real(domain, out.values, [&](double x) { return integral(x, req.order.at(x)); });
  return out;
}

OperatorField caputo_derivative(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                                const FieldSamples& f, const OperatorRequest& req,
                                const AnalyticField* exact) {
  check_request(domain, req, OperatorKind::CaputoDerivative);
  const Context ctx{domain, aux, req, exact};
  OperatorField out = empty_field(domain, req);

  const std::vector<double> first = first_derivative(ctx, f.values());
  std::vector<double> second;
  Participants parts;
  if (req.formulation == Formulation::Standard) {
    parts = make_participants(ctx, first, Integrand::First);
  } else {
    second = second_derivative(ctx, f.values());
    parts = make_participants(ctx, second, Integrand::Second);
  }
  const double first_at_a = first[domain.first_real()];
  const FractionalIntegral integral{ctx, parts, req.formulation, first_at_a, true};
  evaluate_at_real(domain, out.values, [&](double x) { return integral(x, 1.0 - req.order.at(x)); });
  return out;
}

OperatorField rl_derivative(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                            const FieldSamples& f, const OperatorRequest& req, const AnalyticField* exact) {
  check_request(domain, req, OperatorKind::RLDerivative);
  const Context ctx{domain, aux, req, exact};
  OperatorField out = empty_field(domain, req);
  const double a = domain.a();
  const double fa = f[domain.first_real()];

  // For a constant order the f(a)(x − a)^{1−α} part of g is differentiated
  // exactly, which keeps its (x − a)^{−α} blow-up out of the SPH gradient.
  const bool split_boundary = req.formulation == Formulation::NonSingular && req.order.is_constant_valued();

  std::vector<double> derivative;
  Participants parts;
  if (req.formulation == Formulation::Standard) {
    parts = make_participants(ctx, f.values(), Integrand::Value);
  } else {
    derivative = first_derivative(ctx, f.values());
    parts = make_participants(ctx, derivative, Integrand::First);
  }
  const FractionalIntegral integral{ctx, parts, req.formulation, fa, !split_boundary};

  // Stage 1: g at every particle, virtual ones included. Left of a the interval is empty.
  const auto pos = domain.positions();
  std::vector<double> g(domain.size(), 0.0);
  parallel_for(g.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
      if (pos[k] > a) g[k] = integral(pos[k], 1.0 - req.order.at(pos[k]));
  });

  // Stage 2: SPH gradient of g at the real particles.
  const auto vol = domain.volumes();
  parallel_for(domain.n_real(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t gi = domain.global_index(i);
      const IndexRange window = domain.neighbor_window(pos[gi]);
      double sum = 0.0;
      for (std::size_t j = window.begin; j < window.end; ++j)
        sum += vol[j] * (g[j] - g[gi]) * domain.kernel().gradient(pos[gi] - pos[j]);
      if (req.gradient_correction) sum *= correction_factor_at(domain, gi);
      out.values[i] = sum;
    }
  });

  for (std::size_t i = 0; i < domain.n_real(); ++i) {
    const double x = out.x[i];
    if (!(x > a)) {
      if (fa != 0.0) {
        out.singular_at_boundary[i] = 1;
        out.values[i] = std::numeric_limits<double>::quiet_NaN();
      }
      continue;
    }
    if (split_boundary) {
      const double alpha = req.order.at(x);
      out.values[i] += fa * std::pow(x - a, -alpha) / gamma(1.0 - alpha);
    }
  }
  return out;
}

OperatorField evaluate_operator(const ParticleDomain1D& domain, const AuxiliaryParticles& aux,
                                const FieldSamples& f, const OperatorRequest& req,
                                const AnalyticField* exact) {
  switch (req.op) {
    case OperatorKind::RLIntegral:
      return rl_integral(domain, aux, f, req, exact);
    case OperatorKind::CaputoDerivative:
      return caputo_derivative(domain, aux, f, req, exact);
    case OperatorKind::RLDerivative:
      return rl_derivative(domain, aux, f, req, exact);
  }
  throw EvaluationError("unknown operator");
}

}  // namespace fracsph
