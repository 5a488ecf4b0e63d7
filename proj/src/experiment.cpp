#include "estim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "estim/models.hpp"
#include "estim/objective.hpp"

namespace estim {

TargetData synthesize_target(const DynamicsModel& model, const VecIn& true_params,
                             const TimeGrid& grid, const IntegrationOptions& options) {
  Trajectory clean = integrate_forward(model, true_params, grid, options);
  return TargetData{std::move(clean), 0.0, 0, true_params};
}

TargetData synthesize_target(const std::string& model_name, const VecIn& true_params,
                             const VecIn& y0, const TimeGrid& grid,
                             const IntegrationOptions& options) {
  const auto model = instantiate(model_name, true_params, y0);
  return synthesize_target(*model, true_params, grid, options);
}

TargetData add_noise(const TargetData& target, double level, std::uint64_t seed) {
  if (!(level >= 0.0)) {
    throw std::invalid_argument("noise level must be >= 0");
  }
  TargetData noisy = target;
  noisy.noise_level = level;
  noisy.seed = seed;
  if (level == 0.0) return noisy;

  const Eigen::MatrixXd& clean = target.trajectory.states();
  const Eigen::VectorXd amplitude = clean.cwiseAbs().rowwise().maxCoeff();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd states = clean;
  for (Eigen::Index k = 0; k < states.cols(); ++k) {
    for (Eigen::Index i = 0; i < states.rows(); ++i) {
      states(i, k) += level * amplitude[i] * normal(rng);
    }
  }
  noisy.trajectory = Trajectory(target.trajectory.grid(), std::move(states));
  return noisy;
}

std::size_t SamplingBox::total_points() const {
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    const auto p = static_cast<std::size_t>(std::max(points_per_dim, 0));
    if (p != 0 && total > std::numeric_limits<std::size_t>::max() / p) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= p;
  }
  return total;
}

void SamplingBox::validate() const {
  if (lower.size() == 0 || lower.size() != upper.size()) {
    throw std::invalid_argument("sampling box bounds must be non-empty and of equal length");
  }
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      throw std::invalid_argument("sampling box needs lower < upper in every coordinate");
    }
  }
  if (points_per_dim < 2) {
    throw std::invalid_argument("sampling box needs at least 2 points per dimension");
  }
  if (total_points() > budget) {
    throw std::invalid_argument("sampling lattice of " + std::to_string(total_points()) +
                                " points exceeds the budget of " + std::to_string(budget));
  }
}

Eigen::VectorXd grid_search_init(const Problem& problem, const SamplingBox& box) {
  box.validate();
  if (box.lower.size() != problem.dim()) {
    throw std::invalid_argument("sampling box dimension does not match the problem");
  }
  const Eigen::Index m = box.lower.size();
  const int n = box.points_per_dim;
  const Eigen::VectorXd spacing = (box.upper - box.lower) / (n - 1);

  std::vector<int> index(static_cast<std::size_t>(m), 0);
  Eigen::VectorXd point(m);
  Eigen::VectorXd best;
  double best_value = std::numeric_limits<double>::infinity();
  // Odometer over the lattice with the last coordinate varying fastest, so
  // visiting order is lexicographic in the index.
  while (true) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const int idx = index[static_cast<std::size_t>(i)];
      point[i] = idx == n - 1 ? box.upper[i] : box.lower[i] + idx * spacing[i];
    }
    const double value = problem.value(point);
    if (value < best_value) {
      best_value = value;
      best = point;
    }
    Eigen::Index pos = m - 1;
    while (pos >= 0 && ++index[static_cast<std::size_t>(pos)] == n) {
      index[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (best.size() == 0) {
    throw std::runtime_error("grid search: every lattice point diverged");
  }
  return best;
}

std::string_view to_string(InitMode mode) {
  return mode == InitMode::Grid ? "grid" : "explicit";
}

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::SteepestDescent: return "sd";
    case OptimizerKind::Backtracking: return "backtrack";
    case OptimizerKind::Ncg: return "ncg";
  }
  return "unknown";
}

namespace {

bool same(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a.size() == 0 || a == b);
}

}  // namespace

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.model_name == b.model_name && same(a.true_params, b.true_params) && same(a.y0, b.y0) &&
         a.t_start == b.t_start && a.t_end == b.t_end && a.n_steps == b.n_steps &&
         a.noise_level == b.noise_level && a.seed == b.seed && a.alpha == b.alpha &&
         a.overflow_bound == b.overflow_bound && a.init_mode == b.init_mode &&
         same(a.u0, b.u0) && same(a.box.lower, b.box.lower) && same(a.box.upper, b.box.upper) &&
         a.box.points_per_dim == b.box.points_per_dim && a.box.budget == b.box.budget &&
         a.optimizer == b.optimizer && a.variant == b.variant &&
         a.optimizer_config.tolerance == b.optimizer_config.tolerance &&
         a.optimizer_config.max_iterations == b.optimizer_config.max_iterations &&
         a.optimizer_config.lipschitz_xi == b.optimizer_config.lipschitz_xi &&
         a.optimizer_config.initial_step == b.optimizer_config.initial_step &&
         a.wolfe.rho == b.wolfe.rho && a.wolfe.sigma == b.wolfe.sigma &&
         a.wolfe.max_zoom == b.wolfe.max_zoom && a.wolfe.alpha_max == b.wolfe.alpha_max &&
         a.output_directory == b.output_directory && a.output_formats == b.output_formats;
}

ExperimentConfig default_config(const std::string& model_name) {
  const ModelInfo& info = model_info(model_name);
  ExperimentConfig cfg;
  cfg.model_name = info.name;
  cfg.true_params = info.true_params;
  cfg.y0 = info.y0;
  cfg.t_start = info.t_start;
  cfg.t_end = info.t_end;
  cfg.n_steps = info.n_steps;
  cfg.box.lower = info.box_lower;
  cfg.box.upper = info.box_upper;
  cfg.box.points_per_dim = info.box_points;
  cfg.u0 = info.true_params;
  cfg.optimizer = OptimizerKind::Ncg;
  cfg.variant = BetaRule::FletcherReeves;
  cfg.optimizer_config.tolerance = 1e-12;
  cfg.optimizer_config.max_iterations = 5000;
  cfg.optimizer_config.lipschitz_xi = 1e3;
  cfg.optimizer_config.initial_step = 1e-3;
  // The first-species rates are weakly identified; a larger weight visibly
  // pulls them toward zero.
  if (info.name == "species") {
    cfg.alpha = 1e-10;
    cfg.optimizer_config.tolerance = 1e-16;
  }
  return cfg;
}

Eigen::VectorXd relative_errors(const VecIn& recovered, const VecIn& truth) {
  Eigen::VectorXd err(truth.size());
  for (Eigen::Index i = 0; i < truth.size(); ++i) {
    err[i] = std::abs(recovered[i] - truth[i]) / std::max(std::abs(truth[i]), 1e-12);
  }
  return err;
}

OptimizationResult run_optimizer(const Problem& problem, const Eigen::VectorXd& u0,
                                 const ExperimentConfig& config) {
  switch (config.optimizer) {
    case OptimizerKind::SteepestDescent:
      return steepest_descent_fixed(problem, u0, config.optimizer_config);
    case OptimizerKind::Backtracking:
      return backtracking_descent(problem, u0, config.optimizer_config);
    case OptimizerKind::Ncg:
      return ncg_minimize(problem, u0, config.variant, config.wolfe, config.optimizer_config);
  }
  throw std::logic_error("unhandled optimizer kind");
}

namespace {

void merge_into(RateReport& into, const RateReport& from) {
  into.albaali_violations = from.albaali_violations;
  into.corollary_violations = from.corollary_violations;
  into.band_checked = from.band_checked;
  into.sigma = from.sigma;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.config = config;
  report.true_params = config.true_params;
  try {
    report.param_names = model_info(config.model_name).param_names;
    const auto model = instantiate(config.model_name, config.true_params, config.y0);
    const IntegrationOptions options{config.overflow_bound};
    const TimeGrid grid = config.grid();

    TargetData target = synthesize_target(*model, config.true_params, grid, options);
    target = add_noise(target, config.noise_level, config.seed);
    report.target = target.trajectory;

    const EstimationProblem problem(*model, target.trajectory, config.alpha, options);
    report.initial_params =
        config.init_mode == InitMode::Grid ? grid_search_init(problem, config.box) : config.u0;
    if (report.initial_params.size() != model->param_dim()) {
      throw std::invalid_argument("initial guess has the wrong number of parameters");
    }

    OptimizationResult result = run_optimizer(problem, report.initial_params, config);
    report.recovered_params = result.params;
    report.history = std::move(result.history);
    report.relative_errors = relative_errors(report.recovered_params, config.true_params);
    report.final_objective = report.history.last().value;

    if (config.optimizer == OptimizerKind::Ncg) {
      const double sigma = config.wolfe.sigma;
      report.rates = check_decay_lemma(report.history, sigma);
      merge_into(report.rates, check_descent_bounds(report.history, sigma));
      report.wolfe_audit = audit_wolfe_steps(problem, report.history, config.wolfe);
    }
    try {
      const RateReport fit = estimate_linear_rate(report.history);
      report.rates.estimated_rate = fit.estimated_rate;
      report.rates.r_squared = fit.r_squared;
      report.rates.fitted_points = fit.fitted_points;
    } catch (const std::invalid_argument& e) {
      if (!report.rates.note.empty()) report.rates.note += "; ";
      report.rates.note += e.what();
    }
    try {
      report.fitted = integrate_forward(*model, report.recovered_params, grid, options);
    } catch (const std::exception&) {
      report.fitted.reset();
    }
  } catch (const std::exception& e) {
    report.failed = true;
    report.error = e.what();
    report.history.status = TerminalStatus::Diverged;
    if (report.history.message.empty()) report.history.message = e.what();
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace estim
