#include "estim/dynamics_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace estim {

void DynamicsModel::adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                                const VecIn& residual, VecOut out) const {
  generic_adjoint_rhs(*this, t, p, y, u, residual, out);
}

void DynamicsModel::gradient_integrand(double t, const VecIn& y, const VecIn& u,
                                       const VecIn& p, VecOut out) const {
  generic_gradient_integrand(*this, t, y, u, p, out);
}

Eigen::VectorXd DynamicsModel::rhs_value(double t, const VecIn& y, const VecIn& u) const {
  Eigen::VectorXd out(state_dim());
  rhs(t, y, u, out);
  return out;
}

void DynamicsModel::check_initial_state() const {
  if (y0_.size() != state_dim()) {
    throw std::invalid_argument(name() + ": initial state must have " +
                                std::to_string(state_dim()) + " entries");
  }
}

void generic_adjoint_rhs(const DynamicsModel& model, double t, const VecIn& p, const VecIn& y,
                         const VecIn& u, const VecIn& residual, VecOut out) {
  out = -model.jac_state(t, y, u).transpose() * p - residual;
}

void generic_gradient_integrand(const DynamicsModel& model, double t, const VecIn& y,
                                const VecIn& u, const VecIn& p, VecOut out) {
  out = model.jac_param(t, y, u).transpose() * p;
}

Eigen::MatrixXd numeric_jac_state(const DynamicsModel& model, double t, const VecIn& y,
                                  const VecIn& u, double step) {
  const int n = model.state_dim();
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd yp = y, ym = y;
  for (int j = 0; j < n; ++j) {
    const double s = step * std::max(1.0, std::abs(y[j]));
    yp[j] = y[j] + s;
    ym[j] = y[j] - s;
    jac.col(j) = (model.rhs_value(t, yp, u) - model.rhs_value(t, ym, u)) / (2.0 * s);
    yp[j] = ym[j] = y[j];
  }
  return jac;
}

Eigen::MatrixXd numeric_jac_param(const DynamicsModel& model, double t, const VecIn& y,
                                  const VecIn& u, double step) {
  const int n = model.state_dim();
  const int m = model.param_dim();
  Eigen::MatrixXd jac(n, m);
  Eigen::VectorXd up = u, um = u;
  for (int j = 0; j < m; ++j) {
    const double s = step * std::max(1.0, std::abs(u[j]));
    up[j] = u[j] + s;
    um[j] = u[j] - s;
    jac.col(j) = (model.rhs_value(t, y, up) - model.rhs_value(t, y, um)) / (2.0 * s);
    up[j] = um[j] = u[j];
  }
  return jac;
}

}  // namespace estim
