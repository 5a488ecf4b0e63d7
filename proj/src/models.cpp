#include "estim/models.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace estim {
namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// FitzHugh-Nagumo

FhnModel::FhnModel(Eigen::VectorXd y0) : DynamicsModel(std::move(y0)) { check_initial_state(); }

void FhnModel::rhs(double, const VecIn& y, const VecIn& u, VecOut out) const {
  const double v = y[0], w = y[1];
  const double a = u[0], i0 = u[1], eps = u[2], d = u[3];
  out[0] = -v * (v - a) * (v - 1.0) + i0;
  out[1] = eps * (v - d * w);
}

Eigen::MatrixXd FhnModel::jac_state(double, const VecIn& y, const VecIn& u) const {
  const double v = y[0];
  const double a = u[0], eps = u[2], d = u[3];
  Eigen::MatrixXd jac(2, 2);
  jac << -3.0 * v * v + 2.0 * (1.0 + a) * v - a, 0.0,
         eps, -eps * d;
  return jac;
}

Eigen::MatrixXd FhnModel::jac_param(double, const VecIn& y, const VecIn& u) const {
  const double v = y[0], w = y[1];
  const double eps = u[2], d = u[3];
  Eigen::MatrixXd jac(2, 4);
  jac << v * (v - 1.0), 1.0, 0.0, 0.0,
         0.0, 0.0, v - d * w, -eps * w;
  return jac;
}

void FhnModel::adjoint_rhs(double, const VecIn& p, const VecIn& y, const VecIn& u,
                           const VecIn& residual, VecOut out) const {
  const double v = y[0];
  const double a = u[0], eps = u[2], d = u[3];
  const double dfv_dv = -3.0 * v * v + 2.0 * (1.0 + a) * v - a;
  out[0] = -(dfv_dv * p[0] + eps * p[1]) - residual[0];
  out[1] = eps * d * p[1] - residual[1];
}

void FhnModel::gradient_integrand(double, const VecIn& y, const VecIn& u, const VecIn& p,
                                  VecOut out) const {
  const double v = y[0], w = y[1];
  const double eps = u[2], d = u[3];
  out[0] = v * (v - 1.0) * p[0];
  out[1] = p[0];
  out[2] = (v - d * w) * p[1];
  out[3] = -eps * w * p[1];
}

// ---------------------------------------------------------------------------
// Linear system with parametrized coefficient matrix

LinearMatrixModel::LinearMatrixModel(Eigen::VectorXd y0, Forcing forcing)
    : DynamicsModel(std::move(y0)), forcing_(std::move(forcing)) {
  check_initial_state();
  if (!forcing_) {
    forcing_ = [](double t) { return Eigen::Vector2d(std::sin(t), 0.0); };
  }
}

Eigen::Matrix2d LinearMatrixModel::coefficients(const VecIn& c) {
  Eigen::Matrix2d a;
  a << c[0] * c[0] * c[1], c[1] * c[2],
       std::sin(c[2]), c[0] * c[2] * c[2];
  return a;
}

void LinearMatrixModel::rhs(double t, const VecIn& y, const VecIn& u, VecOut out) const {
  out = coefficients(u) * y + forcing_(t);
}

Eigen::MatrixXd LinearMatrixModel::jac_state(double, const VecIn&, const VecIn& u) const {
  return coefficients(u);
}

Eigen::MatrixXd LinearMatrixModel::jac_param(double, const VecIn& y, const VecIn& u) const {
  const double c1 = u[0], c2 = u[1], c3 = u[2];
  const double y1 = y[0], y2 = y[1];
  Eigen::MatrixXd jac(2, 3);
  jac << 2.0 * c1 * c2 * y1, c1 * c1 * y1 + c3 * y2, c2 * y2,
         c3 * c3 * y2, 0.0, std::cos(c3) * y1 + 2.0 * c1 * c3 * y2;
  return jac;
}

void LinearMatrixModel::adjoint_rhs(double, const VecIn& p, const VecIn&, const VecIn& u,
                                    const VecIn& residual, VecOut out) const {
  out = -coefficients(u).transpose() * p - residual;
}

void LinearMatrixModel::gradient_integrand(double, const VecIn& y, const VecIn& u,
                                           const VecIn& p, VecOut out) const {
  const double c1 = u[0], c2 = u[1], c3 = u[2];
  const double y1 = y[0], y2 = y[1];
  out[0] = 2.0 * c1 * c2 * y1 * p[0] + c3 * c3 * y2 * p[1];
  out[1] = (c1 * c1 * y1 + c3 * y2) * p[0];
  out[2] = c2 * y2 * p[0] + (std::cos(c3) * y1 + 2.0 * c1 * c3 * y2) * p[1];
}

Eigen::Matrix2d linear_variation(const VecIn& c, const VecIn& h) {
  const double c1 = c[0], c2 = c[1], c3 = c[2];
  Eigen::Matrix2d l;
  l << 2.0 * c1 * c2 * h[0] + c1 * c1 * h[1], c3 * h[1] + c2 * h[2],
       std::cos(c3) * h[2], c3 * c3 * h[0] + 2.0 * c1 * c3 * h[2];
  return l;
}

double linear_variation_lipschitz(const VecIn& c) {
  const double c1 = c[0], c2 = c[1], c3 = c[2];
  const double cs = std::cos(c3);
  return std::sqrt(4.0 * c1 * c1 * c2 * c2 + c1 * c1 * c1 * c1 + c3 * c3 + c2 * c2 + cs * cs +
                   c3 * c3 * c3 * c3 + 4.0 * c1 * c1 * c3 * c3);
}

// ---------------------------------------------------------------------------
// Van der Pol

VanDerPolModel::VanDerPolModel(Eigen::VectorXd y0) : DynamicsModel(std::move(y0)) {
  check_initial_state();
}

void VanDerPolModel::rhs(double, const VecIn& y, const VecIn& u, VecOut out) const {
  const double v = y[0], w = y[1], mu = u[0];
  out[0] = w;
  out[1] = mu * (1.0 - v * v) * w - v;
}

Eigen::MatrixXd VanDerPolModel::jac_state(double, const VecIn& y, const VecIn& u) const {
  const double v = y[0], w = y[1], mu = u[0];
  Eigen::MatrixXd jac(2, 2);
  jac << 0.0, 1.0,
         -2.0 * mu * v * w - 1.0, mu * (1.0 - v * v);
  return jac;
}

Eigen::MatrixXd VanDerPolModel::jac_param(double, const VecIn& y, const VecIn&) const {
  const double v = y[0], w = y[1];
  Eigen::MatrixXd jac(2, 1);
  jac << 0.0, (1.0 - v * v) * w;
  return jac;
}

void VanDerPolModel::adjoint_rhs(double, const VecIn& p, const VecIn& y, const VecIn& u,
                                 const VecIn& residual, VecOut out) const {
  const double v = y[0], w = y[1], mu = u[0];
  // -dp/dt = -(2 mu v w + 1) q + r1,  -dq/dt = p + mu (1 - v^2) q + r2
  out[0] = (2.0 * mu * v * w + 1.0) * p[1] - residual[0];
  out[1] = -(p[0] + mu * (1.0 - v * v) * p[1]) - residual[1];
}

void VanDerPolModel::gradient_integrand(double, const VecIn& y, const VecIn&, const VecIn& p,
                                        VecOut out) const {
  const double v = y[0], w = y[1];
  out[0] = (1.0 - v * v) * w * p[1];
}

// ---------------------------------------------------------------------------
// Competing species

CompetingSpeciesModel::CompetingSpeciesModel(Eigen::VectorXd y0) : DynamicsModel(std::move(y0)) {
  check_initial_state();
}

void CompetingSpeciesModel::rhs(double, const VecIn& y, const VecIn& u, VecOut out) const {
  const double v = y[0], w = y[1];
  out[0] = v * (u[0] - u[1] * v - u[2] * w);
  out[1] = w * (u[3] - u[4] * w - u[5] * v);
}

Eigen::MatrixXd CompetingSpeciesModel::jac_state(double, const VecIn& y, const VecIn& u) const {
  const double v = y[0], w = y[1];
  Eigen::MatrixXd jac(2, 2);
  jac << u[0] - 2.0 * u[1] * v - u[2] * w, -u[2] * v,
         -u[5] * w, u[3] - 2.0 * u[4] * w - u[5] * v;
  return jac;
}

Eigen::MatrixXd CompetingSpeciesModel::jac_param(double, const VecIn& y, const VecIn&) const {
  const double v = y[0], w = y[1];
  Eigen::MatrixXd jac(2, 6);
  jac << v, -v * v, -v * w, 0.0, 0.0, 0.0,
         0.0, 0.0, 0.0, w, -w * w, -v * w;
  return jac;
}

void CompetingSpeciesModel::adjoint_rhs(double, const VecIn& p, const VecIn& y, const VecIn& u,
                                        const VecIn& residual, VecOut out) const {
  const double v = y[0], w = y[1];
  out[0] = -((u[0] - 2.0 * u[1] * v - u[2] * w) * p[0] - u[5] * w * p[1]) - residual[0];
  out[1] = -((u[3] - 2.0 * u[4] * w - u[5] * v) * p[1] - u[2] * v * p[0]) - residual[1];
}

void CompetingSpeciesModel::gradient_integrand(double, const VecIn& y, const VecIn&,
                                               const VecIn& p, VecOut out) const {
  const double v = y[0], w = y[1];
  out[0] = v * p[0];
  out[1] = -v * v * p[0];
  out[2] = -v * w * p[0];
  out[3] = w * p[1];
  out[4] = -w * w * p[1];
  out[5] = -v * w * p[1];
}

// ---------------------------------------------------------------------------
// Registry

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names{"fhn", "linear", "vdp", "species"};
  return names;
}

const ModelInfo& model_info(const std::string& name) {
  static const std::map<std::string, ModelInfo> registry = [] {
    std::map<std::string, ModelInfo> r;
    r["fhn"] = ModelInfo{"fhn",
                         {"a", "I0", "eps", "d"},
                         vec({0.1, 2.0e-2, 1.0e-2, 4.0}),
                         vec({0.0, 0.0}),
                         0.0,
                         100.0,
                         40000,
                         vec({0.0, 0.0, 0.0, 1.0}),
                         vec({0.5, 0.1, 0.05, 8.0}),
                         6};
    r["linear"] = ModelInfo{"linear",
                            {"c1", "c2", "c3"},
                            vec({0.119, 0.352, 0.220}),
                            vec({1.0, 0.0}),
                            0.0,
                            10.0,
                            1000,
                            vec({0.0, 0.0, 0.0}),
                            vec({0.3, 0.6, 0.5}),
                            7};
    r["vdp"] = ModelInfo{"vdp",
                         {"mu"},
                         vec({1.23e-2}),
                         vec({0.5, 0.0}),
                         0.0,
                         100.0,
                         10000,
                         vec({0.0}),
                         vec({0.05}),
                         11};
    r["species"] = ModelInfo{"species",
                             {"zeta1", "eta1", "theta1", "zeta2", "eta2", "theta2"},
                             vec({0.4, 1.0, 3.3, 0.5, 0.25, 0.75}),
                             vec({0.5, 0.3}),
                             0.0,
                             20.0,
                             2000,
                             vec({0.1, 0.5, 1.0, 0.1, 0.1, 0.25}),
                             vec({0.8, 2.0, 5.0, 1.0, 0.5, 1.25}),
                             5};
    return r;
  }();
  const auto it = registry.find(name);
  if (it == registry.end()) {
    throw std::invalid_argument("unknown model '" + name + "' (valid: fhn, linear, vdp, species)");
  }
  return it->second;
}

std::unique_ptr<DynamicsModel> instantiate(const std::string& name, const VecIn& params,
                                           const VecIn& y0, LinearMatrixModel::Forcing forcing) {
  std::unique_ptr<DynamicsModel> model;
  if (name == "fhn") {
    model = std::make_unique<FhnModel>(y0);
  } else if (name == "linear") {
    model = std::make_unique<LinearMatrixModel>(y0, std::move(forcing));
  } else if (name == "vdp") {
    model = std::make_unique<VanDerPolModel>(y0);
  } else if (name == "species") {
    model = std::make_unique<CompetingSpeciesModel>(y0);
  } else {
    throw std::invalid_argument("unknown model '" + name + "' (valid: fhn, linear, vdp, species)");
  }
  if (params.size() != model->param_dim()) {
    throw std::invalid_argument(name + ": expected " + std::to_string(model->param_dim()) +
                                " parameters, got " + std::to_string(params.size()));
  }
  return model;
}

}  // namespace estim
