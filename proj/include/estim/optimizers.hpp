#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "estim/history.hpp"
#include "estim/line_search.hpp"
#include "estim/problem.hpp"

namespace estim {

struct OptimizerConfig {
  double tolerance = 1e-10;     ///< stop once |g|^2 < tolerance
  int max_iterations = 1000;    ///< maximum number of accepted steps
  double lipschitz_xi = 1.0;    ///< fixed-step descent uses 1 / (2 xi)
  double initial_step = 1.0;    ///< backtracking reset step; first NCG trial step

  void validate() const;
};

struct OptimizationResult {
  Eigen::VectorXd params;
  OptimizationHistory history;
};

/// u_{k+1} = u_k - g_k / (2 xi) until |g_k|^2 < tolerance.
OptimizationResult steepest_descent_fixed(const Problem& problem, const Eigen::VectorXd& u0,
                                          const OptimizerConfig& config);

/// Monotone backtracking descent: every iteration starts from the reset step
/// alpha* and halves it until J decreases, retrying from the last accepted
/// iterate. Accepted objective values are strictly decreasing. Reports
/// LineSearchFailure once the step drops below 1e-16 alpha* without decrease.
OptimizationResult backtracking_descent(const Problem& problem, const Eigen::VectorXd& u0,
                                        const OptimizerConfig& config);

enum class BetaRule { FletcherReeves, PolakRibiere, HestenesStiefel, DaiYuan };

std::string_view to_string(BetaRule rule);
/// Accepts fr, pr, hs, dy (case-insensitive). Throws std::invalid_argument.
BetaRule parse_beta_rule(std::string_view name);

struct BetaValue {
  double value = 0.0;
  std::string note;  ///< non-empty when the raw value was clamped or replaced
};

/// beta_k for the given rule with dg = g_k - g_prev. Negative values and
/// degenerate denominators fall back to 0 with an explanatory note.
BetaValue compute_beta(BetaRule rule, const Eigen::VectorXd& g_k, const Eigen::VectorXd& g_prev,
                       const Eigen::VectorXd& d_prev);

/// Continued nonlinear conjugate gradient: d_1 = -g_1, d_k = -g_k + beta_k d_{k-1},
/// step lengths from the strong Wolfe search.
OptimizationResult ncg_minimize(const Problem& problem, const Eigen::VectorXd& u0, BetaRule rule,
                                const WolfeConfig& wolfe, const OptimizerConfig& config);

}  // namespace estim
