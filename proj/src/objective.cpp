#include "estim/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "estim/errors.hpp"

namespace estim {
namespace {

void check_inputs(const DynamicsModel& model, const VecIn& params, const Trajectory& target,
                  double alpha) {
  if (params.size() != model.param_dim()) {
    throw std::invalid_argument(model.name() + ": expected " + std::to_string(model.param_dim()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  if (target.dim() != model.state_dim()) {
    throw std::invalid_argument("target dimension does not match the model state");
  }
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("regularization weight alpha must be >= 0");
  }
  if (!params.allFinite()) {
    throw std::invalid_argument("parameters must be finite");
  }
}

ObjectiveEvaluation assemble_objective(Trajectory forward, const VecIn& params,
                                       const Trajectory& target, double alpha) {
  const Eigen::VectorXd sq = (forward.states() - target.states()).colwise().squaredNorm();
  ObjectiveEvaluation eval;
  eval.misfit_part = 0.5 * quadrature(target.grid(), sq);
  eval.regularization_part = 0.5 * alpha * params.squaredNorm();
  eval.value = eval.misfit_part + eval.regularization_part;
  eval.forward = std::move(forward);
  return eval;
}

}  // namespace

ObjectiveEvaluation evaluate_objective(const DynamicsModel& model, const VecIn& params,
                                       const Trajectory& target, double alpha,
                                       const IntegrationOptions& options) {
  check_inputs(model, params, target, alpha);
  try {
    return assemble_objective(integrate_forward(model, params, target.grid(), options), params,
                              target, alpha);
  } catch (const DivergenceError&) {
    ObjectiveEvaluation eval;
    eval.value = std::numeric_limits<double>::infinity();
    eval.misfit_part = eval.value;
    eval.regularization_part = 0.5 * alpha * params.squaredNorm();
    return eval;
  }
}

GradientEvaluation evaluate_gradient(const DynamicsModel& model, const VecIn& params,
                                     const Trajectory& target, double alpha,
                                     const IntegrationOptions& options) {
  check_inputs(model, params, target, alpha);
  ObjectiveEvaluation objective = assemble_objective(
      integrate_forward(model, params, target.grid(), options), params, target, alpha);
  const Trajectory& forward = *objective.forward;
  Trajectory adjoint = integrate_adjoint(model, params, forward, target, options);

  const TimeGrid& grid = target.grid();
  const int m = model.param_dim();
  Eigen::MatrixXd integrand(m, static_cast<Eigen::Index>(grid.n_nodes()));
  for (std::size_t k = 0; k < grid.n_nodes(); ++k) {
    model.gradient_integrand(grid.node(static_cast<int>(k)), forward.state(k), params,
                             adjoint.state(k), integrand.col(static_cast<Eigen::Index>(k)));
  }
  Eigen::VectorXd gradient = alpha * params;
  for (int j = 0; j < m; ++j) {
    gradient[j] += quadrature(grid, integrand.row(j).transpose());
  }
  const double norm_sq = gradient.squaredNorm();
  return GradientEvaluation{std::move(gradient), std::move(adjoint), norm_sq,
                            std::move(objective)};
}

Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const VecIn& params, double step) {
  if (!(step > 0.0)) {
    throw std::invalid_argument("finite-difference step must be positive");
  }
  Eigen::VectorXd grad(params.size());
  Eigen::VectorXd up = params, um = params;
  for (Eigen::Index j = 0; j < params.size(); ++j) {
    const double s = step * std::max(1.0, std::abs(params[j]));
    up[j] = params[j] + s;
    um[j] = params[j] - s;
    const double fp = f(up);
    const double fm = f(um);
    if (!std::isfinite(fp) || !std::isfinite(fm)) {
      throw DivergenceError("perturbed objective evaluation diverged");
    }
    grad[j] = (fp - fm) / (2.0 * s);
    up[j] = um[j] = params[j];
  }
  return grad;
}

Eigen::VectorXd finite_difference_gradient(const DynamicsModel& model, const VecIn& params,
                                           const Trajectory& target, double alpha, double step,
                                           const IntegrationOptions& options) {
  check_inputs(model, params, target, alpha);
  return finite_difference_gradient(
      [&](const Eigen::VectorXd& u) {
        return evaluate_objective(model, u, target, alpha, options).value;
      },
      params, step);
}

GradientCheckReport gradient_check(const DynamicsModel& model, const VecIn& params,
                                   const Trajectory& target, double alpha, double step,
                                   double threshold, double absolute_floor,
                                   const IntegrationOptions& options) {
  const Eigen::VectorXd adjoint = evaluate_gradient(model, params, target, alpha, options).gradient;
  const Eigen::VectorXd fd = finite_difference_gradient(model, params, target, alpha, step, options);

  GradientCheckReport report;
  report.threshold = threshold;
  double scale = std::max(adjoint.cwiseAbs().maxCoeff(), fd.cwiseAbs().maxCoeff());
  if (scale < absolute_floor) {
    scale = absolute_floor;
    report.absolute = true;
  }
  for (Eigen::Index j = 0; j < adjoint.size(); ++j) {
    const double err = std::abs(adjoint[j] - fd[j]) / scale;
    report.rows.push_back(GradientCheckRow{static_cast<int>(j), adjoint[j], fd[j], err});
    report.max_relative_error = std::max(report.max_relative_error, err);
  }
  report.passed = report.max_relative_error <= threshold;
  return report;
}

EstimationProblem::EstimationProblem(const DynamicsModel& model, Trajectory target, double alpha,
                                     IntegrationOptions options)
    : model_(model), target_(std::move(target)), alpha_(alpha), options_(options) {
  if (target_.dim() != model_.state_dim()) {
    throw std::invalid_argument("target dimension does not match the model state");
  }
  if (!(alpha_ >= 0.0)) {
    throw std::invalid_argument("regularization weight alpha must be >= 0");
  }
}

double EstimationProblem::value(const Eigen::VectorXd& u) const {
  if (!u.allFinite()) return std::numeric_limits<double>::infinity();
  return evaluate_objective(model_, u, target_, alpha_, options_).value;
}

Sample EstimationProblem::value_and_gradient(const Eigen::VectorXd& u) const {
  if (!u.allFinite()) {
    return Sample{std::numeric_limits<double>::infinity(),
                  Eigen::VectorXd::Constant(u.size(), std::numeric_limits<double>::quiet_NaN())};
  }
  try {
    GradientEvaluation eval = evaluate_gradient(model_, u, target_, alpha_, options_);
    return Sample{eval.objective.value, std::move(eval.gradient)};
  } catch (const DivergenceError&) {
    return Sample{std::numeric_limits<double>::infinity(),
                  Eigen::VectorXd::Constant(u.size(), std::numeric_limits<double>::quiet_NaN())};
  }
}

}  // namespace estim
