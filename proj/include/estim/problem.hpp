#pragma once

#include <functional>
#include <limits>
#include <utility>

#include <Eigen/Dense>

namespace estim {

/// Objective value and gradient at one point. A diverged evaluation carries
/// value = +inf and an unspecified gradient.
struct Sample {
  double value = std::numeric_limits<double>::infinity();
  Eigen::VectorXd gradient;
};

/// Smooth objective seen by the optimizers.
class Problem {
 public:
  virtual ~Problem() = default;
  virtual int dim() const = 0;
  /// +inf when the objective cannot be evaluated.
  virtual double value(const Eigen::VectorXd& u) const = 0;
  virtual Sample value_and_gradient(const Eigen::VectorXd& u) const = 0;
};

/// Problem defined by plain callables; used for analytic fixtures.
class FunctionProblem final : public Problem {
 public:
  using ValueFn = std::function<double(const Eigen::VectorXd&)>;
  using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  FunctionProblem(int dim, ValueFn value, GradientFn gradient)
      : dim_(dim), value_(std::move(value)), gradient_(std::move(gradient)) {}

  int dim() const override { return dim_; }
  double value(const Eigen::VectorXd& u) const override { return value_(u); }
  Sample value_and_gradient(const Eigen::VectorXd& u) const override {
    return Sample{value_(u), gradient_(u)};
  }

 private:
  int dim_;
  ValueFn value_;
  GradientFn gradient_;
};

/// J(u) = 1/2 u^T A u for a symmetric A.
inline FunctionProblem quadratic_problem(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  return FunctionProblem(
      n, [a](const Eigen::VectorXd& u) { return 0.5 * u.dot(a * u); },
      [a](const Eigen::VectorXd& u) -> Eigen::VectorXd { return a * u; });
}

}  // namespace estim
