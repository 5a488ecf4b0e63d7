#include "estim/ode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "estim/errors.hpp"

namespace estim {
namespace {

void check_bounded(const Eigen::VectorXd& y, double bound, const char* what, double t) {
  if (!y.allFinite() || y.cwiseAbs().maxCoeff() > bound) {
    throw DivergenceError(std::string(what) + " solve diverged at t = " + std::to_string(t));
  }
}

}  // namespace

Trajectory integrate_forward(const DynamicsModel& model, const VecIn& params, const TimeGrid& grid,
                             const IntegrationOptions& options) {
  if (params.size() != model.param_dim()) {
    throw std::invalid_argument(model.name() + ": expected " + std::to_string(model.param_dim()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  const int n = model.state_dim();
  const double h = grid.step();
  Eigen::MatrixXd states(n, static_cast<Eigen::Index>(grid.n_nodes()));
  Eigen::VectorXd y = model.initial_state();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n);
  check_bounded(y, options.overflow_bound, "forward", grid.t_start());
  states.col(0) = y;

  for (int k = 0; k < grid.n_steps(); ++k) {
    const double t = grid.node(k);
    model.rhs(t, y, params, k1);
    tmp = y + 0.5 * h * k1;
    model.rhs(t + 0.5 * h, tmp, params, k2);
    tmp = y + 0.5 * h * k2;
    model.rhs(t + 0.5 * h, tmp, params, k3);
    tmp = y + h * k3;
    model.rhs(t + h, tmp, params, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_bounded(y, options.overflow_bound, "forward", grid.node(k + 1));
    states.col(k + 1) = y;
  }
  return Trajectory(grid, std::move(states));
}

Trajectory integrate_adjoint(const DynamicsModel& model, const VecIn& params,
                             const Trajectory& forward, const Trajectory& target,
                             const IntegrationOptions& options) {
  if (!(forward.grid() == target.grid())) {
    throw std::invalid_argument("forward and target trajectories must share a grid");
  }
  if (forward.dim() != target.dim() || forward.dim() != model.state_dim()) {
    throw std::invalid_argument("forward, target and model state dimensions differ");
  }
  if (params.size() != model.param_dim()) {
    throw std::invalid_argument(model.name() + ": wrong parameter count for adjoint solve");
  }
  const TimeGrid& grid = forward.grid();
  const int n = model.state_dim();
  const double h = grid.step();
  const Eigen::MatrixXd residual = forward.states() - target.states();

  Eigen::MatrixXd states(n, static_cast<Eigen::Index>(grid.n_nodes()));
  Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), tmp(n), y_mid(n), r_mid(n);
  states.col(grid.n_steps()) = p;

  // March from node k+1 back to node k with step -h.
  for (int k = grid.n_steps() - 1; k >= 0; --k) {
    const double t1 = grid.node(k + 1);
    const double t0 = grid.node(k);
    const double tm = 0.5 * (t0 + t1);
    const auto y1 = forward.state(static_cast<std::size_t>(k) + 1);
    const auto y0 = forward.state(static_cast<std::size_t>(k));
    const auto r1 = residual.col(k + 1);
    const auto r0 = residual.col(k);
    y_mid = 0.5 * (y0 + y1);
    r_mid = 0.5 * (r0 + r1);

    model.adjoint_rhs(t1, p, y1, params, r1, k1);
    tmp = p - 0.5 * h * k1;
    model.adjoint_rhs(tm, tmp, y_mid, params, r_mid, k2);
    tmp = p - 0.5 * h * k2;
    model.adjoint_rhs(tm, tmp, y_mid, params, r_mid, k3);
    tmp = p - h * k3;
    model.adjoint_rhs(t0, tmp, y0, params, r0, k4);
    p -= (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check_bounded(p, options.overflow_bound, "adjoint", t0);
    states.col(k) = p;
  }
  return Trajectory(grid, std::move(states));
}

double quadrature(const TimeGrid& grid, const VecIn& values) {
  if (static_cast<std::size_t>(values.size()) != grid.n_nodes()) {
    throw std::invalid_argument("quadrature needs one value per grid node");
  }
  const Eigen::Index last = values.size() - 1;
  const double interior = values.segment(1, last - 1).sum();
  return grid.step() * (0.5 * (values[0] + values[last]) + interior);
}

}  // namespace estim
