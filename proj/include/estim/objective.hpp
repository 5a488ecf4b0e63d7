#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "estim/dynamics_model.hpp"
#include "estim/ode.hpp"
#include "estim/problem.hpp"
#include "estim/trajectory.hpp"

namespace estim {

/// J(u) = alpha/2 |u|^2 + 1/2 int |y(t, u) - y_target(t)|^2 dt.
struct ObjectiveEvaluation {
  double value = 0.0;
  double misfit_part = 0.0;
  double regularization_part = 0.0;
  /// Empty when the forward solve diverged; value is then +inf.
  std::optional<Trajectory> forward;

  bool diverged() const { return !forward.has_value(); }
};

struct GradientEvaluation {
  Eigen::VectorXd gradient;
  Trajectory adjoint;
  double norm_sq = 0.0;
  ObjectiveEvaluation objective;
};

/// Divergence of the forward solve is reported through the +inf sentinel.
ObjectiveEvaluation evaluate_objective(const DynamicsModel& model, const VecIn& params,
                                       const Trajectory& target, double alpha,
                                       const IntegrationOptions& options = {});

/// Adjoint-state gradient g = alpha u + int (dF/du)^T p dt. Throws
/// DivergenceError if either solve diverges.
GradientEvaluation evaluate_gradient(const DynamicsModel& model, const VecIn& params,
                                     const Trajectory& target, double alpha,
                                     const IntegrationOptions& options = {});

/// Central differences with per-coordinate step s_j = step * max(1, |u_j|).
/// Throws std::invalid_argument for step <= 0 and DivergenceError if a
/// perturbed evaluation diverges.
Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const VecIn& params, double step);

Eigen::VectorXd finite_difference_gradient(const DynamicsModel& model, const VecIn& params,
                                           const Trajectory& target, double alpha, double step,
                                           const IntegrationOptions& options = {});

struct GradientCheckRow {
  int index = 0;
  double adjoint = 0.0;
  double finite_difference = 0.0;
  double relative_error = 0.0;
};

/// Relative errors are normwise: |g_adj_j - g_fd_j| / max(|g_adj|_inf, |g_fd|_inf).
/// When both gradients are below `absolute_floor` the floor replaces the
/// denominator, which turns the test into an absolute one.
struct GradientCheckReport {
  double max_relative_error = 0.0;
  double threshold = 1e-3;
  bool absolute = false;
  bool passed = false;
  std::vector<GradientCheckRow> rows;
};

GradientCheckReport gradient_check(const DynamicsModel& model, const VecIn& params,
                                   const Trajectory& target, double alpha, double step = 1e-6,
                                   double threshold = 1e-3, double absolute_floor = 1e-10,
                                   const IntegrationOptions& options = {});

/// Objective of one identification problem: a model, a target trajectory and
/// a regularization weight.
class EstimationProblem final : public Problem {
 public:
  EstimationProblem(const DynamicsModel& model, Trajectory target, double alpha,
                    IntegrationOptions options = {});

  int dim() const override { return model_.param_dim(); }
  double value(const Eigen::VectorXd& u) const override;
  Sample value_and_gradient(const Eigen::VectorXd& u) const override;

  const DynamicsModel& model() const { return model_; }
  const Trajectory& target() const { return target_; }
  double alpha() const { return alpha_; }

 private:
  const DynamicsModel& model_;
  Trajectory target_;
  double alpha_;
  IntegrationOptions options_;
};

}  // namespace estim
