// estim: parameter identification for the shipped ODE models.
//
//   estim estimate  --config run.cfg [--set key=value]...
//   estim gradcheck --config run.cfg
//   estim table     --config run.cfg
//   estim simulate  --config run.cfg
//
// Exit codes: 0 converged / check passed, 1 configuration or I/O error,
// 2 iteration budget exhausted (or a failed table row), 3 line-search
// failure or divergence.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "estim/artifacts.hpp"
#include "estim/config.hpp"
#include "estim/errors.hpp"
#include "estim/experiment.hpp"
#include "estim/models.hpp"
#include "estim/objective.hpp"

namespace {

namespace fs = std::filesystem;
using namespace estim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBudget = 2;
constexpr int kExitFailure = 3;

int exit_code(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::Converged: return kExitOk;
    case TerminalStatus::MaxIterations: return kExitBudget;
    case TerminalStatus::LineSearchFailure:
    case TerminalStatus::Diverged: return kExitFailure;
  }
  return kExitFailure;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  ExperimentConfig config = parse_config(path, overrides);
  apply_environment(config);
  return config;
}

void print_report(const ExperimentReport& report) {
  std::printf("%-10s %-24s %-24s %-12s\n", "parameter", "true", "recovered", "rel.error");
  for (Eigen::Index i = 0; i < report.true_params.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    std::printf("%-10s %-24s %-24s %-12s\n", report.param_names.at(idx).c_str(),
                format_number(report.true_params[i]).c_str(),
                i < report.recovered_params.size()
                    ? format_number(report.recovered_params[i]).c_str()
                    : "-",
                i < report.relative_errors.size() ? short_number(report.relative_errors[i]).c_str()
                                                  : "-");
  }
  std::printf("status %s after %d steps, J = %s, %.2f s\n",
              std::string(to_string(report.status())).c_str(), report.history.steps(),
              format_number(report.final_objective).c_str(), report.wall_time);
  if (!report.history.message.empty()) std::printf("note: %s\n", report.history.message.c_str());
}

int cmd_estimate(const ExperimentConfig& config) {
  const ExperimentReport report = run_experiment(config);
  print_report(report);
  const auto paths = write_artifacts(report, config.output_directory);
  for (const auto& p : paths) std::printf("wrote %s\n", p.string().c_str());
  return report.failed ? kExitFailure : exit_code(report.status());
}

int cmd_gradcheck(const ExperimentConfig& config) {
  const auto model = instantiate(config.model_name, config.true_params, config.y0);
  const IntegrationOptions options{config.overflow_bound};
  TargetData target = synthesize_target(*model, config.true_params, config.grid(), options);
  target = add_noise(target, config.noise_level, config.seed);
  // At the true parameters of a clean target the gradient is only alpha * u,
  // far below finite-difference resolution; the box center is generic.
  const Eigen::VectorXd at = config.init_mode == InitMode::Explicit
                                 ? config.u0
                                 : Eigen::VectorXd(0.5 * (config.box.lower + config.box.upper));

  const GradientCheckReport check =
      gradient_check(*model, at, target.trajectory, config.alpha, 1e-6, 1e-3, 1e-10, options);
  const auto& names = model_info(config.model_name).param_names;
  std::printf("%-10s %-24s %-24s %-12s\n", "parameter", "adjoint", "finite_diff", "rel.error");
  for (const auto& row : check.rows) {
    std::printf("%-10s %-24s %-24s %-12s\n", names.at(static_cast<std::size_t>(row.index)).c_str(),
                format_number(row.adjoint).c_str(), format_number(row.finite_difference).c_str(),
                short_number(row.relative_error).c_str());
  }
  std::printf("max relative error %s (threshold %s%s): %s\n",
              short_number(check.max_relative_error).c_str(), short_number(check.threshold).c_str(),
              check.absolute ? ", absolute mode" : "", check.passed ? "PASS" : "FAIL");
  return check.passed ? kExitOk : kExitFailure;
}

int cmd_table(const ExperimentConfig& base) {
  const std::vector<std::pair<std::string, double>> levels = {
      {"noise-free", 0.0}, {"noise 1%", 0.01}, {"noise 5%", 0.05}, {"noise 10%", 0.10}};
  const fs::path root = base.output_directory;
  std::vector<TableRow> rows;
  rows.push_back(TableRow{"actual", base.true_params, ""});
  bool any_failed = false;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    ExperimentConfig config = base;
    config.noise_level = levels[i].second;
    config.seed = base.seed + i;
    const fs::path dir = root / ("noise_" + std::to_string(static_cast<int>(
                                                std::lround(levels[i].second * 100))));
    config.output_directory = dir.string();
    const ExperimentReport report = run_experiment(config);
    write_artifacts(report, dir);
    std::string status(to_string(report.status()));
    if (report.failed) status += ": " + report.error;
    any_failed = any_failed || report.failed || report.status() != TerminalStatus::Converged;
    rows.push_back(TableRow{levels[i].first, report.recovered_params, status});
    std::printf("%-11s %s (%d steps, %.2f s)\n", levels[i].first.c_str(), status.c_str(),
                report.history.steps(), report.wall_time);
  }
  const auto& names = model_info(base.model_name).param_names;
  const std::string table = table_csv(names, rows);
  fs::create_directories(root);
  write_file_atomic(root / "table.csv", table);
  std::fputs(table.c_str(), stdout);
  std::printf("wrote %s\n", (root / "table.csv").string().c_str());
  return any_failed ? kExitBudget : kExitOk;
}

int cmd_simulate(const ExperimentConfig& config) {
  const auto model = instantiate(config.model_name, config.true_params, config.y0);
  const Trajectory traj = integrate_forward(*model, config.true_params, config.grid(),
                                            IntegrationOptions{config.overflow_bound});
  const fs::path dir = config.output_directory;
  fs::create_directories(dir);
  write_file_atomic(dir / "simulation.csv", simulation_csv(traj));
  std::printf("wrote %s\n", (dir / "simulation.csv").string().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parameter identification for nonlinear ODE models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ESTIM_VERSION_STRING);

  std::string config_path;
  std::vector<std::string> overrides;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--set", overrides, "override a configuration key (key=value)");
  };
  CLI::App* estimate = app.add_subcommand("estimate", "run one identification and write artifacts");
  CLI::App* gradcheck = app.add_subcommand("gradcheck", "compare adjoint and finite-difference gradients");
  CLI::App* table = app.add_subcommand("table", "run the four noise levels and write table.csv");
  CLI::App* simulate = app.add_subcommand("simulate", "forward solve at the true parameters");
  for (CLI::App* sub : {estimate, gradcheck, table, simulate}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  ExperimentConfig config;
  try {
    config = load(config_path, overrides);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  }

  try {
    if (*estimate) return cmd_estimate(config);
    if (*gradcheck) return cmd_gradcheck(config);
    if (*table) return cmd_table(config);
    return cmd_simulate(config);
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "diverged: %s\n", e.what());
    return kExitFailure;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
