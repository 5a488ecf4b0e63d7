#pragma once

#include <string>

#include <Eigen/Dense>

namespace estim {

using VecIn = Eigen::Ref<const Eigen::VectorXd>;
using VecOut = Eigen::Ref<Eigen::VectorXd>;

/// Right-hand side F(t, y, u) of an ODE system together with its state and
/// parameter Jacobians.
///
/// The adjoint and gradient hooks have generic implementations built from the
/// Jacobians. Shipped models override them with hand-derived expressions; the
/// generic versions stay available through generic_adjoint_rhs() and
/// generic_gradient_integrand() so the two paths can be cross-checked.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int param_dim() const = 0;

  const Eigen::VectorXd& initial_state() const { return y0_; }

  virtual void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const = 0;
  /// n x n matrix dF/dy.
  virtual Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const = 0;
  /// n x m matrix dF/du.
  virtual Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const = 0;

  /// Forward-time derivative of the adjoint state,
  ///   dp/dt = -(dF/dy)^T p - residual,  residual = y - y_target,
  /// so that -dp/dt - (dF/dy)^T p = y - y_target.
  virtual void adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                           const VecIn& residual, VecOut out) const;

  /// (dF/du)^T p, the pointwise integrand of the misfit gradient.
  virtual void gradient_integrand(double t, const VecIn& y, const VecIn& u, const VecIn& p,
                                  VecOut out) const;

  Eigen::VectorXd rhs_value(double t, const VecIn& y, const VecIn& u) const;

 protected:
  explicit DynamicsModel(Eigen::VectorXd y0) : y0_(std::move(y0)) {}

  /// Throws std::invalid_argument if y0_ does not have state_dim() entries.
  void check_initial_state() const;

 private:
  Eigen::VectorXd y0_;
};

void generic_adjoint_rhs(const DynamicsModel& model, double t, const VecIn& p, const VecIn& y,
                         const VecIn& u, const VecIn& residual, VecOut out);

void generic_gradient_integrand(const DynamicsModel& model, double t, const VecIn& y,
                                const VecIn& u, const VecIn& p, VecOut out);

/// Central-difference Jacobians of model.rhs, used to validate the analytic ones.
Eigen::MatrixXd numeric_jac_state(const DynamicsModel& model, double t, const VecIn& y,
                                  const VecIn& u, double step = 1e-6);
Eigen::MatrixXd numeric_jac_param(const DynamicsModel& model, double t, const VecIn& y,
                                  const VecIn& u, double step = 1e-6);

}  // namespace estim
