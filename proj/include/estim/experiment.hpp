#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "estim/diagnostics.hpp"
#include "estim/dynamics_model.hpp"
#include "estim/history.hpp"
#include "estim/line_search.hpp"
#include "estim/ode.hpp"
#include "estim/optimizers.hpp"
#include "estim/problem.hpp"
#include "estim/trajectory.hpp"

namespace estim {

/// Target trajectory y^T with its provenance.
struct TargetData {
  Trajectory trajectory;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  Eigen::VectorXd true_params;
};

/// Clean forward solve of `model` at `true_params`; noise_level = 0.
TargetData synthesize_target(const DynamicsModel& model, const VecIn& true_params,
                             const TimeGrid& grid, const IntegrationOptions& options = {});

/// Instantiates the named model with `y0` first.
TargetData synthesize_target(const std::string& model_name, const VecIn& true_params,
                             const VecIn& y0, const TimeGrid& grid,
                             const IntegrationOptions& options = {});

/// Adds N(0, (level * amp_i)^2) to component i at every node, with
/// amp_i = max_t |y_i(t)|. Deterministic for a fixed seed; level 0 returns an
/// identical trajectory. Throws std::invalid_argument for a negative level.
TargetData add_noise(const TargetData& target, double level, std::uint64_t seed);

/// Axis-aligned lattice of points_per_dim nodes per coordinate.
struct SamplingBox {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  int points_per_dim = 5;
  std::size_t budget = 1'000'000;

  std::size_t total_points() const;
  /// Throws std::invalid_argument for mismatched bounds, lower >= upper,
  /// fewer than two points per coordinate or an exceeded budget.
  void validate() const;
};

/// Evaluates the objective on every lattice point (divergent solves score
/// +inf) and returns the minimizer; ties go to the lexicographically smallest
/// lattice index. Throws std::runtime_error if every point diverges.
Eigen::VectorXd grid_search_init(const Problem& problem, const SamplingBox& box);

enum class InitMode { Grid, Explicit };
enum class OptimizerKind { SteepestDescent, Backtracking, Ncg };

std::string_view to_string(InitMode mode);
std::string_view to_string(OptimizerKind kind);

/// Fully resolved description of one identification run.
struct ExperimentConfig {
  std::string model_name = "fhn";
  Eigen::VectorXd true_params;
  Eigen::VectorXd y0;
  double t_start = 0.0;
  double t_end = 1.0;
  int n_steps = 1000;

  double noise_level = 0.0;
  std::uint64_t seed = 1;

  double alpha = 1e-6;
  double overflow_bound = 1e12;

  InitMode init_mode = InitMode::Grid;
  Eigen::VectorXd u0;
  SamplingBox box;

  OptimizerKind optimizer = OptimizerKind::Ncg;
  BetaRule variant = BetaRule::FletcherReeves;
  OptimizerConfig optimizer_config;
  WolfeConfig wolfe;

  std::string output_directory = "estim_out";
  std::vector<std::string> output_formats{"csv", "json"};

  TimeGrid grid() const { return TimeGrid(t_start, t_end, n_steps); }
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Defaults shipped for the named model. Throws std::invalid_argument for an
/// unknown model.
ExperimentConfig default_config(const std::string& model_name);

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> param_names;
  Eigen::VectorXd true_params;
  Eigen::VectorXd initial_params;
  Eigen::VectorXd recovered_params;
  /// |recovered - true| / max(|true|, 1e-12)
  Eigen::VectorXd relative_errors;
  double final_objective = IterationRecord::kNone;
  OptimizationHistory history;
  RateReport rates;
  std::optional<WolfeAudit> wolfe_audit;
  std::optional<Trajectory> target;
  std::optional<Trajectory> fitted;
  double wall_time = 0.0;
  bool failed = false;
  std::string error;

  TerminalStatus status() const { return history.status; }
};

Eigen::VectorXd relative_errors(const VecIn& recovered, const VecIn& truth);

/// synthesize -> add noise -> initialize -> optimize -> diagnose. Component
/// errors are caught and reported through `failed` / `error`.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Runs the optimizer selected in `config` on an arbitrary problem.
OptimizationResult run_optimizer(const Problem& problem, const Eigen::VectorXd& u0,
                                 const ExperimentConfig& config);

}  // namespace estim
