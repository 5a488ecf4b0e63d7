#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "estim/dynamics_model.hpp"

namespace estim {

/// FitzHugh-Nagumo variant with an autonomous membrane equation.
///   dv/dt = -v (v - a)(v - 1) + I0
///   dw/dt = eps (v - d w)
/// Parameters: (a, I0, eps, d).
class FhnModel final : public DynamicsModel {
 public:
  explicit FhnModel(Eigen::VectorXd y0);

  std::string name() const override { return "fhn"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 4; }

  void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const override;
  Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const override;
  Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const override;
  void adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                   const VecIn& residual, VecOut out) const override;
  void gradient_integrand(double t, const VecIn& y, const VecIn& u, const VecIn& p,
                          VecOut out) const override;
};

/// dy/dt = A(c) y + f(t) with
///   A(c) = [[c1^2 c2, c2 c3], [sin(c3), c1 c3^2]]
/// and forcing f(t) = (sin t, 0) unless another is supplied.
class LinearMatrixModel final : public DynamicsModel {
 public:
  using Forcing = std::function<Eigen::Vector2d(double)>;

  explicit LinearMatrixModel(Eigen::VectorXd y0, Forcing forcing = {});

  std::string name() const override { return "linear"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 3; }

  static Eigen::Matrix2d coefficients(const VecIn& c);

  void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const override;
  Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const override;
  Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const override;
  void adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                   const VecIn& residual, VecOut out) const override;
  void gradient_integrand(double t, const VecIn& y, const VecIn& u, const VecIn& p,
                          VecOut out) const override;

 private:
  Forcing forcing_;
};

/// Van der Pol oscillator reduced to first order.
///   dv/dt = w
///   dw/dt = mu (1 - v^2) w - v
class VanDerPolModel final : public DynamicsModel {
 public:
  explicit VanDerPolModel(Eigen::VectorXd y0);

  std::string name() const override { return "vdp"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 1; }

  void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const override;
  Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const override;
  Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const override;
  void adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                   const VecIn& residual, VecOut out) const override;
  void gradient_integrand(double t, const VecIn& y, const VecIn& u, const VecIn& p,
                          VecOut out) const override;
};

/// Two species competing for one resource.
///   dv/dt = v (zeta1 - eta1 v - theta1 w)
///   dw/dt = w (zeta2 - eta2 w - theta2 v)
/// Parameters: (zeta1, eta1, theta1, zeta2, eta2, theta2).
class CompetingSpeciesModel final : public DynamicsModel {
 public:
  explicit CompetingSpeciesModel(Eigen::VectorXd y0);

  std::string name() const override { return "species"; }
  int state_dim() const override { return 2; }
  int param_dim() const override { return 6; }

  void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const override;
  Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const override;
  Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const override;
  void adjoint_rhs(double t, const VecIn& p, const VecIn& y, const VecIn& u,
                   const VecIn& residual, VecOut out) const override;
  void gradient_integrand(double t, const VecIn& y, const VecIn& u, const VecIn& p,
                          VecOut out) const override;
};

/// Defaults shipped with each benchmark: ground-truth parameters, initial
/// state, horizon, grid resolution and the sampling box for the lattice
/// initializer.
struct ModelInfo {
  std::string name;
  std::vector<std::string> param_names;
  Eigen::VectorXd true_params;
  Eigen::VectorXd y0;
  double t_start = 0.0;
  double t_end = 1.0;
  int n_steps = 1000;
  Eigen::VectorXd box_lower;
  Eigen::VectorXd box_upper;
  int box_points = 5;
};

const std::vector<std::string>& model_names();

/// Throws std::invalid_argument for an unknown name.
const ModelInfo& model_info(const std::string& name);

/// Builds the named model. Throws std::invalid_argument for an unknown name,
/// a parameter vector of the wrong length, or a wrong-sized initial state.
/// `forcing` only applies to the linear model.
std::unique_ptr<DynamicsModel> instantiate(const std::string& name, const VecIn& params,
                                           const VecIn& y0,
                                           LinearMatrixModel::Forcing forcing = {});

/// First-order variation L(c; h) = dA(c)[h] of the linear model's
/// coefficient matrix.
Eigen::Matrix2d linear_variation(const VecIn& c, const VecIn& h);

/// Lipschitz constant of h -> L(c; h) in the Frobenius norm, i.e. the
/// Frobenius norm of the 4x3 map taking h to vec(L(c; h)).
double linear_variation_lipschitz(const VecIn& c);

}  // namespace estim
