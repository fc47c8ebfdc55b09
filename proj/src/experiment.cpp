#include "fracsph/experiment.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fracsph/error.hpp"
#include "fracsph/parallel.hpp"
#include "fracsph/simd/power_sum.hpp"
#include "json.hpp"

namespace fracsph {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"domain", {"a", "b", "n_real", "h_factor", "rho0", "virtual_field"}},
      {"function", {"preset", "expr"}},
      {"order", {"constant", "variable"}},
      {"operator",
       {"name", "formulation", "integration", "weights", "aux_values", "gradient_correction", "eta"}},
      {"reference", {"kind"}},
      {"output", {"dir"}},
  };
  return keys;
}

std::string trimmed(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& field, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value))
    throw ConfigError(field, "expected a finite number, got '" + text + "'");
  return value;
}

std::size_t to_count(const std::string& field, const std::string& text) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  return value;
}

bool to_bool(const std::string& field, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(field, "expected true or false, got '" + text + "'");
}

template <typename Enum>
Enum to_enum(const std::string& field, const std::string& text,
             std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  std::string names;
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
    names += names.empty() ? "" : ", ";
    names += name;
  }
  throw ConfigError(field, "'" + text + "' is not one of: " + names);
}

std::string_view to_string(VirtualField v) {
  switch (v) {
    case VirtualField::Analytic:
      return "analytic";
    case VirtualField::Zero:
      return "zero";
    case VirtualField::Mirror:
      return "mirror";
  }
  return "?";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> reference_values(const ExperimentConfig& cfg, const TestFunction& fn,
                                     const OperatorRequest& req, std::span<const double> x,
                                     ExperimentResult& result) {
  ReferenceKind kind = cfg.reference;
  if (kind == ReferenceKind::Analytic && !has_analytic_reference(fn, req)) {
    kind = ReferenceKind::Quadrature;
    result.notices.push_back("no closed form for this function/operator/order; using the quadrature oracle");
  }
  result.reference_used = kind;
  std::vector<double> ref(x.size());
  OracleOptions options;
  options.fd_step = 1e-4 * (cfg.b - cfg.a);
  parallel_for(x.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      ref[i] = kind == ReferenceKind::Analytic ? analytic_reference(fn, req, x[i])
                                               : quadrature_oracle(fn, req, x[i], options);
  });
  return ref;
}

}  // namespace

std::string_view to_string(ReferenceKind kind) noexcept {
  return kind == ReferenceKind::Analytic ? "analytic" : "quadrature";
}

void ExperimentConfig::validate() const {
  if (!(b > a)) throw ConfigError("domain.b", "must be greater than domain.a");
  if (n_real < 2) throw ConfigError("domain.n_real", "at least two particles are required");
  if (!(h_factor >= 1.0)) throw ConfigError("domain.h_factor", "must be at least 1");
  if (!(rho0 > 0.0)) throw ConfigError("domain.rho0", "must be positive");
  if (function_preset.empty() == function_expr.empty())
    throw ConfigError("function", "set exactly one of preset or expr");
  if (order_constant.has_value() == !order_variable.empty())
    throw ConfigError("order", "set exactly one of constant or variable");
  if (eta && !(*eta >= 0.0)) throw ConfigError("operator.eta", "must be non-negative");
  try {
    function();
  } catch (const ParseError& e) {
    throw ConfigError("function.expr", e.what());
  } catch (const UnsupportedError& e) {
    throw ConfigError("function.preset", e.what());
  }
  try {
    order().validate_on(a, b);
  } catch (const ParseError& e) {
    throw ConfigError("order.variable", e.what());
  } catch (const Error& e) {
    throw ConfigError(order_constant ? "order.constant" : "order.variable", e.what());
  }
}

TestFunction ExperimentConfig::function() const {
  if (!function_expr.empty()) return TestFunction::expression(parse_expression(function_expr));
  return TestFunction::preset(function_preset);
}

OrderSpec ExperimentConfig::order() const {
  if (order_constant) return OrderSpec::constant(*order_constant);
  return OrderSpec::variable(parse_expression(order_variable));
}

OperatorRequest ExperimentConfig::request() const {
  OperatorRequest req;
  req.op = op;
  req.formulation = formulation;
  req.integration = integration;
  req.order = order();
  req.lower_bound = a;
  req.weights = weights;
  req.aux_values = aux_values;
  req.gradient_correction = gradient_correction;
  req.eta = eta;
  return req;
}

ExperimentConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config", "line " + std::to_string(e.line()) + ": " + e.message());
  }

  ExperimentConfig cfg;
  bool saw_preset = false;
  bool saw_expr = false;
  bool saw_constant = false;
  bool saw_variable = false;
  for (const auto& [section, body] : tree) {
    const auto known = known_keys().find(section);
    if (known == known_keys().end()) {
      if (body.empty()) throw ConfigError(section, "keys must live inside a [section]");
      throw ConfigError(section, "unknown section");
    }
    for (const auto& [key, node] : body) {
      const std::string field = section + "." + key;
      if (!known->second.count(key)) throw ConfigError(field, "unknown key");
      const std::string v = trimmed(node.data());
      if (field == "domain.a") cfg.a = to_double(field, v);
      else if (field == "domain.b") cfg.b = to_double(field, v);
      else if (field == "domain.n_real") cfg.n_real = to_count(field, v);
      else if (field == "domain.h_factor") cfg.h_factor = to_double(field, v);
      else if (field == "domain.rho0") cfg.rho0 = to_double(field, v);
      else if (field == "domain.virtual_field")
        cfg.virtual_field = to_enum<VirtualField>(
            field, v, {{"analytic", VirtualField::Analytic}, {"zero", VirtualField::Zero}, {"mirror", VirtualField::Mirror}});
      else if (field == "function.preset") {
        cfg.function_preset = v;
        saw_preset = true;
      } else if (field == "function.expr") {
        cfg.function_expr = v;
        saw_expr = true;
      } else if (field == "order.constant") {
        cfg.order_constant = to_double(field, v);
        saw_constant = true;
      } else if (field == "order.variable") {
        cfg.order_variable = v;
        saw_variable = true;
      } else if (field == "operator.name")
        cfg.op = to_enum<OperatorKind>(field, v,
                                       {{"rl_integral", OperatorKind::RLIntegral},
                                        {"rl_derivative", OperatorKind::RLDerivative},
                                        {"caputo", OperatorKind::CaputoDerivative}});
      else if (field == "operator.formulation")
        cfg.formulation = to_enum<Formulation>(
            field, v, {{"standard", Formulation::Standard}, {"nonsingular", Formulation::NonSingular}});
      else if (field == "operator.integration")
        cfg.integration = to_enum<Integration>(
            field, v, {{"standard", Integration::Standard}, {"auxiliary", Integration::Auxiliary}});
      else if (field == "operator.weights")
        cfg.weights = to_enum<WeightBounds>(
            field, v, {{"cumulative", WeightBounds::Cumulative}, {"bounded", WeightBounds::Bounded}});
      else if (field == "operator.aux_values")
        cfg.aux_values =
            to_enum<AuxValues>(field, v, {{"average", AuxValues::Average}, {"exact", AuxValues::Exact}});
      else if (field == "operator.gradient_correction") cfg.gradient_correction = to_bool(field, v);
      else if (field == "operator.eta") cfg.eta = to_double(field, v);
      else if (field == "reference.kind")
        cfg.reference = to_enum<ReferenceKind>(
            field, v, {{"analytic", ReferenceKind::Analytic}, {"quadrature", ReferenceKind::Quadrature}});
      else if (field == "output.dir") cfg.output_dir = v;
    }
  }
  if (saw_expr && !saw_preset) cfg.function_preset.clear();
  if (saw_variable && !saw_constant) cfg.order_constant.reset();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config(buffer.str());
  if (!cfg.output_dir.empty() && cfg.output_dir.is_relative())
    cfg.output_dir = path.parent_path() / cfg.output_dir;
  return cfg;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto started = std::chrono::steady_clock::now();

  const TestFunction fn = cfg.function();
  const OperatorRequest req = cfg.request();
  const ParticleDomain1D domain = build_domain(cfg.a, cfg.b, cfg.n_real, cfg.h(), cfg.rho0);
  // Bounded weights let the virtual layer carry kernel mass; the midpoint set follows suit.
  const AuxiliaryParticles aux = auxiliary_particles(
      domain, cfg.weights == WeightBounds::Bounded ? AuxiliaryLayer::WithVirtual : AuxiliaryLayer::Real);
  const FieldSamples samples = sample_field(domain, [&fn](double x) { return fn.value(x); }, cfg.virtual_field);
  const AnalyticField exact = fn.as_field();

  ExperimentResult result;
  result.field = evaluate_operator(domain, aux, samples, req, &exact);
  result.reference = reference_values(cfg, fn, req, result.field.x, result);
  result.report = error_report(result.field, result.reference);
  result.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    write_points_csv(cfg.output_dir / "points.csv", result);
    write_summary_json(cfg.output_dir / "summary.json", cfg, result);
  }
  return result;
}

SweepResult sweep_convergence(const ExperimentConfig& cfg, const std::vector<std::size_t>& levels) {
  if (levels.empty()) throw ConfigError("levels", "at least one level is required");
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] < 2) throw ConfigError("levels", "each level needs at least two particles");
    if (k > 0 && levels[k] <= levels[k - 1]) throw ConfigError("levels", "levels must be strictly increasing");
  }

  SweepResult sweep;
  for (const std::size_t n : levels) {
    ExperimentConfig level = cfg;
    level.n_real = n;
    if (!cfg.output_dir.empty()) level.output_dir = cfg.output_dir / ("n_" + std::to_string(n));
    const ExperimentResult r = run_experiment(level);
    sweep.rows.push_back({n, level.spacing(), r.report.l2, r.report.r2});
  }

  if (sweep.rows.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (const auto& row : sweep.rows) {
      mx += std::log(row.s);
      my += std::log(row.l2);
    }
    const auto n = static_cast<double>(sweep.rows.size());
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (const auto& row : sweep.rows) {
      const double dx = std::log(row.s) - mx;
      sxy += dx * (std::log(row.l2) - my);
      sxx += dx * dx;
    }
    sweep.slope = sxy / sxx;
  }

  if (!cfg.output_dir.empty()) {
    std::filesystem::create_directories(cfg.output_dir);
    write_convergence_csv(cfg.output_dir / "convergence.csv", sweep);
  }
  return sweep;
}

GateReport run_oracle_gate(const ExperimentConfig& cfg, std::size_t points, double tolerance) {
  cfg.validate();
  return dual_oracle_gate(cfg.function(), cfg.request(), cfg.a, cfg.b, points, tolerance);
}

void write_points_csv(const std::filesystem::path& path, const ExperimentResult& result) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << "x,approx,reference,abs_error\n";
  const auto& f = result.field;
  for (std::size_t i = 0; i < f.size(); ++i)
    out << fmt(f.x[i]) << ',' << fmt(f.values[i]) << ',' << fmt(result.reference[i]) << ','
        << fmt(result.report.abs_errors[i]) << '\n';
}

void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& cfg,
                        const ExperimentResult& result) {
  using nlohmann::ordered_json;
  ordered_json config;
  config["domain"] = {{"a", cfg.a},
                      {"b", cfg.b},
                      {"n_real", cfg.n_real},
                      {"h_factor", cfg.h_factor},
                      {"rho0", cfg.rho0},
                      {"virtual_field", to_string(cfg.virtual_field)},
                      {"s", cfg.spacing()},
                      {"h", cfg.h()}};
  config["function"] = cfg.function_expr.empty() ? ordered_json{{"preset", cfg.function_preset}}
                                                 : ordered_json{{"expr", cfg.function_expr}};
  config["order"] = cfg.order_constant ? ordered_json{{"constant", *cfg.order_constant}}
                                       : ordered_json{{"variable", cfg.order_variable}};
  config["operator"] = {{"name", to_string(cfg.op)},
                        {"formulation", to_string(cfg.formulation)},
                        {"integration", to_string(cfg.integration)},
                        {"weights", to_string(cfg.weights)},
                        {"aux_values", to_string(cfg.aux_values)},
                        {"gradient_correction", cfg.gradient_correction},
                        {"eta", cfg.eta.value_or(default_brookshaw_eta(cfg.h()))}};
  config["reference"] = {{"kind", to_string(cfg.reference)}};
  config["output"] = {{"dir", cfg.output_dir.string()}};

  const ErrorReport& r = result.report;
  ordered_json summary;
  summary["config"] = config;
  summary["l2"] = r.l2;
  summary["l2_is_absolute"] = r.l2_is_absolute;
  summary["r2"] = r.r2 ? ordered_json(*r.r2) : ordered_json(nullptr);
  summary["max_abs_error"] = r.max_abs_error;
  summary["n_points"] = r.n_points;
  summary["excluded_points"] = r.excluded_points;
  summary["reference_used"] = to_string(result.reference_used);
  summary["notices"] = result.notices;
  summary["simd_backend"] = simd::backend_name(simd::active_backend());
  summary["wall_time_ms"] = result.wall_time_ms;

  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << summary.dump(2) << '\n';
}

void write_convergence_csv(const std::filesystem::path& path, const SweepResult& sweep) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << "n_real,s,l2,r2\n";
  for (const auto& row : sweep.rows)
    out << row.n_real << ',' << fmt(row.s) << ',' << fmt(row.l2) << ','
        << (row.r2 ? fmt(*row.r2) : std::string()) << '\n';
}

std::vector<std::size_t> parse_levels(std::string_view text) {
  std::vector<std::size_t> levels;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = trimmed(std::string(text.substr(start, comma - start)));
    if (item.empty()) throw ConfigError("levels", "empty entry in '" + std::string(text) + "'");
    levels.push_back(to_count("levels", item));
    start = comma + 1;
  }
  return levels;
}

}  // namespace fracsph
