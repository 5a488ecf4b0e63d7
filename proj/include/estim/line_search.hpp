#pragma once

#include <Eigen/Dense>

#include "estim/problem.hpp"

namespace estim {

/// Strong Wolfe parameters: sufficient decrease rho, curvature sigma with
/// 0 < rho <= sigma <= 1/2.
struct WolfeConfig {
  double rho = 1e-4;
  double sigma = 0.4;
  int max_zoom = 50;
  double alpha_max = 1e3;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;
};

struct WolfeStep {
  double alpha = 0.0;
  Sample at_step;      ///< J and g at u + alpha d
  int evaluations = 0;
};

/// Sufficient decrease: J(u + a d) - J(u) <= rho a g^T d.
bool satisfies_sufficient_decrease(double value0, double slope0, double alpha, double value,
                                   double rho);
/// Strong curvature: |g(u + a d)^T d| <= -sigma g^T d.
bool satisfies_strong_curvature(double slope0, double slope, double sigma);

/// Bracketing phase followed by bisection zoom. The returned step satisfies
/// both strong Wolfe inequalities. Throws std::invalid_argument when d is not
/// a descent direction and LineSearchError when no admissible step is found
/// within the iteration budget.
WolfeStep strong_wolfe_search(const Problem& problem, const Eigen::VectorXd& u,
                              const Sample& at_u, const Eigen::VectorXd& d,
                              const WolfeConfig& config, double initial_trial = 1.0);

WolfeStep strong_wolfe_search(const Problem& problem, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& d, const WolfeConfig& config,
                              double initial_trial = 1.0);

}  // namespace estim
