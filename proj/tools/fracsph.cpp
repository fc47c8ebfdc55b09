// Command-line front end: run one experiment, sweep resolutions, or check the oracles.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "fracsph/error.hpp"
#include "fracsph/experiment.hpp"

namespace {

void print_report(const fracsph::ExperimentResult& r) {
  for (const auto& notice : r.notices) std::fprintf(stderr, "note: %s\n", notice.c_str());
  const auto& rep = r.report;
  std::printf("l2 = %.6g%s\n", rep.l2, rep.l2_is_absolute ? " (absolute: reference is zero)" : "");
  if (rep.r2)
    std::printf("r2 = %.9f\n", *rep.r2);
  else
    std::printf("r2 = undefined (constant reference)\n");
  std::printf("points = %zu, excluded = %zu, reference = %s, %.1f ms\n", rep.n_points,
              rep.excluded_points, std::string(fracsph::to_string(r.reference_used)).c_str(),
              r.wall_time_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPH evaluation of fractional integrals and derivatives on 1D particle domains"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;

  auto* run = app.add_subcommand("run", "Evaluate one operator and write points.csv and summary.json");
  run->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output_dir, "Output directory (overrides [output] dir)");

  std::string levels_text;
  auto* sweep = app.add_subcommand("sweep", "Repeat a run over several resolutions and fit the error slope");
  sweep->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--levels", levels_text, "Comma-separated particle counts, e.g. 101,201,401")->required();
  sweep->add_option("--output", output_dir, "Output directory (overrides [output] dir)");

  std::size_t points = 21;
  double tolerance = 1e-7;
  auto* oracle = app.add_subcommand("oracle", "Compare the closed-form and quadrature references");
  oracle->add_option("--config", config_path, "INI experiment file")->required()->check(CLI::ExistingFile);
  oracle->add_option("--points", points, "Grid points on [a, b]")->capture_default_str();
  oracle->add_option("--tolerance", tolerance, "Maximum absolute disagreement")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    fracsph::ExperimentConfig cfg = fracsph::load_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;

    if (*run) {
      print_report(fracsph::run_experiment(cfg));
      if (!cfg.output_dir.empty()) std::printf("wrote %s\n", cfg.output_dir.string().c_str());
      return 0;
    }

    if (*sweep) {
      const auto result = fracsph::sweep_convergence(cfg, fracsph::parse_levels(levels_text));
      std::printf("%8s %14s %14s %14s\n", "n_real", "s", "l2", "r2");
      for (const auto& row : result.rows)
        std::printf("%8zu %14.6g %14.6g %14s\n", row.n_real, row.s, row.l2,
                    row.r2 ? std::to_string(*row.r2).c_str() : "undefined");
      if (result.slope)
        std::printf("fitted slope d log(l2) / d log(s) = %.4f\n", *result.slope);
      else
        std::printf("fitted slope undefined (single level)\n");
      return 0;
    }

    const auto gate = fracsph::run_oracle_gate(cfg, points, tolerance);
    std::printf("%s: max |analytic - quadrature| = %.3g at x = %.6g over %zu points (%zu skipped), tolerance %.1g\n",
                gate.passed ? "PASS" : "FAIL", gate.max_abs_diff, gate.worst_x, gate.compared, gate.skipped,
                gate.tolerance);
    return gate.passed ? 0 : 1;
  } catch (const fracsph::UnsupportedError& e) {
    std::fprintf(stderr, "not covered: %s\n", e.what());
    return 3;
  } catch (const fracsph::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
