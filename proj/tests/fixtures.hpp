#pragma once

#include <cmath>
#include <memory>
#include <random>

#include <Eigen/Dense>

#include "estim/dynamics_model.hpp"
#include "estim/models.hpp"

namespace estim::testing {

/// dy/dt = 0 for any dimension; the parameters are inert.
class ZeroModel final : public DynamicsModel {
 public:
  explicit ZeroModel(Eigen::VectorXd y0, int params = 1)
      : DynamicsModel(std::move(y0)), params_(params) {}
  std::string name() const override { return "zero"; }
  int state_dim() const override { return static_cast<int>(initial_state().size()); }
  int param_dim() const override { return params_; }
  void rhs(double, const VecIn&, const VecIn&, VecOut out) const override { out.setZero(); }
  Eigen::MatrixXd jac_state(double, const VecIn&, const VecIn&) const override {
    return Eigen::MatrixXd::Zero(state_dim(), state_dim());
  }
  Eigen::MatrixXd jac_param(double, const VecIn&, const VecIn&) const override {
    return Eigen::MatrixXd::Zero(state_dim(), params_);
  }

 private:
  int params_;
};

/// Scalar dy/dt = u y.
class GrowthModel final : public DynamicsModel {
 public:
  explicit GrowthModel(double y0) : DynamicsModel(Eigen::VectorXd::Constant(1, y0)) {}
  std::string name() const override { return "growth"; }
  int state_dim() const override { return 1; }
  int param_dim() const override { return 1; }
  void rhs(double, const VecIn& y, const VecIn& u, VecOut out) const override {
    out[0] = u[0] * y[0];
  }
  Eigen::MatrixXd jac_state(double, const VecIn&, const VecIn& u) const override {
    return Eigen::MatrixXd::Constant(1, 1, u[0]);
  }
  Eigen::MatrixXd jac_param(double, const VecIn& y, const VecIn&) const override {
    return Eigen::MatrixXd::Constant(1, 1, y[0]);
  }
};

/// Wraps a model and scales its parameter Jacobian, including the gradient
/// integrand, by `factor`. A negative control for gradient checks.
class CorruptedJacobianModel final : public DynamicsModel {
 public:
  CorruptedJacobianModel(std::unique_ptr<DynamicsModel> inner, double factor)
      : DynamicsModel(inner->initial_state()), inner_(std::move(inner)), factor_(factor) {}
  std::string name() const override { return inner_->name() + "-corrupted"; }
  int state_dim() const override { return inner_->state_dim(); }
  int param_dim() const override { return inner_->param_dim(); }
  void rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const override {
    inner_->rhs(t, y, u, out);
  }
  Eigen::MatrixXd jac_state(double t, const VecIn& y, const VecIn& u) const override {
    return inner_->jac_state(t, y, u);
  }
  Eigen::MatrixXd jac_param(double t, const VecIn& y, const VecIn& u) const override {
    Eigen::MatrixXd j = inner_->jac_param(t, y, u);
    j.col(0) *= factor_;
    return j;
  }

 private:
  std::unique_ptr<DynamicsModel> inner_;
  double factor_;
};

inline std::unique_ptr<DynamicsModel> shipped_model(const std::string& name) {
  const ModelInfo& info = model_info(name);
  return instantiate(name, info.true_params, info.y0);
}

/// Uniform point inside the model's sampling box.
inline Eigen::VectorXd random_box_point(const ModelInfo& info, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd u(info.box_lower.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    u[i] = info.box_lower[i] + unit(rng) * (info.box_upper[i] - info.box_lower[i]);
  }
  return u;
}

inline double max_relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max({a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff(), 1e-300});
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace estim::testing
