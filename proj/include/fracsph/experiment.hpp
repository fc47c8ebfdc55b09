#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracsph/analytic.hpp"
#include "fracsph/fracops.hpp"
#include "fracsph/metrics.hpp"

namespace fracsph {

enum class ReferenceKind { Analytic, Quadrature };

/// Everything needed to reproduce one run. Defaults are the 401-particle,
/// h = 1.1 s, α = 0.75 setup on [0, 5].
struct ExperimentConfig {
  double a = 0.0;
  double b = 5.0;
  std::size_t n_real = 401;
  double h_factor = 1.1;
  double rho0 = 1.0;
  VirtualField virtual_field = VirtualField::Analytic;

  std::string function_preset = "sin_pi_x";  // empty when function_expr is used
  std::string function_expr;

  std::optional<double> order_constant = 0.75;  // empty when order_variable is used
  std::string order_variable;

  OperatorKind op = OperatorKind::RLIntegral;
  Formulation formulation = Formulation::NonSingular;
  Integration integration = Integration::Standard;
  WeightBounds weights = WeightBounds::Cumulative;
  AuxValues aux_values = AuxValues::Average;
  bool gradient_correction = true;
  std::optional<double> eta;

  ReferenceKind reference = ReferenceKind::Analytic;
  std::filesystem::path output_dir;

  double spacing() const { return (b - a) / static_cast<double>(n_real - 1); }
  double h() const { return h_factor * spacing(); }

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  TestFunction function() const;
  OrderSpec order() const;
  OperatorRequest request() const;
};

/// INI text: sections [domain] [function] [order] [operator] [reference] [output].
/// Unknown sections or keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct ExperimentResult {
  OperatorField field;
  std::vector<double> reference;
  ErrorReport report;
  ReferenceKind reference_used = ReferenceKind::Analytic;
  std::vector<std::string> notices;
  double wall_time_ms = 0.0;
};

/// Builds the domain, evaluates the operator and the reference, and (when
/// cfg.output_dir is set) writes points.csv and summary.json there.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

struct ConvergenceRow {
  std::size_t n_real = 0;
  double s = 0.0;
  double l2 = 0.0;
  std::optional<double> r2;
};

struct SweepResult {
  std::vector<ConvergenceRow> rows;
  /// Least-squares slope of log l2 against log s; empty for a single level.
  std::optional<double> slope;
};

/// Runs cfg at each n_real in `levels` (strictly increasing, each ≥ 2). With an
/// output directory, level N writes into <dir>/n_N/ and convergence.csv goes to <dir>.
SweepResult sweep_convergence(const ExperimentConfig& cfg, const std::vector<std::size_t>& levels);

/// Dual-oracle gate for the configured function, operator, and order on [a, b].
GateReport run_oracle_gate(const ExperimentConfig& cfg, std::size_t points = 21, double tolerance = 1e-7);

void write_points_csv(const std::filesystem::path& path, const ExperimentResult& result);
void write_summary_json(const std::filesystem::path& path, const ExperimentConfig& cfg,
                        const ExperimentResult& result);
void write_convergence_csv(const std::filesystem::path& path, const SweepResult& sweep);

/// Parses "101,201,401". Throws ConfigError("levels", ...).
std::vector<std::size_t> parse_levels(std::string_view text);

std::string_view to_string(ReferenceKind kind) noexcept;

}  // namespace fracsph
