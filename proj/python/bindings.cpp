#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "estim/config.hpp"
#include "estim/errors.hpp"
#include "estim/experiment.hpp"
#include "estim/models.hpp"
#include "estim/objective.hpp"
#include "estim/ode.hpp"

namespace py = pybind11;
using namespace estim;

namespace {

struct Setup {
  std::unique_ptr<DynamicsModel> model;
  ExperimentConfig config;
};

/// Registry defaults with the optional y0 / grid overrides applied.
Setup setup(const std::string& name, const Eigen::VectorXd& params,
            const std::optional<Eigen::VectorXd>& y0, const std::optional<int>& n_steps) {
  Setup s{nullptr, default_config(name)};
  if (y0) s.config.y0 = *y0;
  if (n_steps) s.config.n_steps = *n_steps;
  s.model = instantiate(name, params, s.config.y0);
  return s;
}

Eigen::VectorXd node_times(const TimeGrid& grid) {
  const int n = static_cast<int>(grid.n_nodes());
  Eigen::VectorXd t(n);
  for (int k = 0; k < n; ++k) t[k] = grid.node(k);
  return t;
}

/// States are n_nodes x dim on the Python side.
Trajectory target_from(const TimeGrid& grid, const Eigen::MatrixXd& rows) {
  return Trajectory(grid, rows.transpose());
}

py::dict history_dict(const OptimizationHistory& h) {
  std::vector<double> j, g, slope, step, beta;
  for (const auto& r : h.records) {
    j.push_back(r.value);
    g.push_back(r.grad_norm);
    slope.push_back(r.slope);
    step.push_back(r.step);
    beta.push_back(r.beta);
  }
  py::dict d;
  d["J"] = j;
  d["grad_norm"] = g;
  d["gTd"] = slope;
  d["alpha"] = step;
  d["beta"] = beta;
  return d;
}

py::dict report_dict(const ExperimentReport& r) {
  py::dict d;
  d["model"] = r.config.model_name;
  d["param_names"] = r.param_names;
  d["true_params"] = r.true_params;
  d["initial_params"] = r.initial_params;
  d["recovered_params"] = r.recovered_params;
  d["relative_errors"] = r.relative_errors;
  d["status"] = std::string(to_string(r.status()));
  d["message"] = r.history.message;
  d["failed"] = r.failed;
  d["error"] = r.error;
  d["iterations"] = r.history.steps();
  d["final_objective"] = r.final_objective;
  d["history"] = history_dict(r.history);
  d["estimated_rate"] = r.rates.estimated_rate;
  d["r_squared"] = r.rates.r_squared;
  d["albaali_violations"] = r.rates.albaali_violations;
  d["decay_lemma_skipped"] = r.rates.decay_lemma_skipped;
  d["decay_lemma_violations"] = r.rates.decay_lemma_violations;
  if (r.wolfe_audit) {
    d["wolfe_violations"] =
        r.wolfe_audit->sufficient_decrease_violations + r.wolfe_audit->curvature_violations;
  }
  d["wall_time"] = r.wall_time;
  return d;
}

}  // namespace

PYBIND11_MODULE(_estim, m) {
  m.doc() = "Adjoint-gradient parameter identification for ODE models.";

  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<LineSearchError>(m, "LineSearchError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("model_names", &model_names, "Names of the shipped models.");

  m.def(
      "model_info",
      [](const std::string& name) {
        const ModelInfo& info = model_info(name);
        py::dict d;
        d["name"] = info.name;
        d["param_names"] = info.param_names;
        d["true_params"] = info.true_params;
        d["y0"] = info.y0;
        d["t_span"] = py::make_tuple(info.t_start, info.t_end);
        d["n_steps"] = info.n_steps;
        d["box_lower"] = info.box_lower;
        d["box_upper"] = info.box_upper;
        d["box_points"] = info.box_points;
        return d;
      },
      py::arg("name"));

  m.def(
      "simulate",
      [](const std::string& name, const Eigen::VectorXd& params,
         const std::optional<Eigen::VectorXd>& y0, const std::optional<int>& n_steps) {
        const Setup s = setup(name, params, y0, n_steps);
        const TimeGrid grid = s.config.grid();
        const Trajectory traj = integrate_forward(*s.model, params, grid);
        return py::make_tuple(node_times(grid), Eigen::MatrixXd(traj.states().transpose()));
      },
      py::arg("model"), py::arg("params"), py::arg("y0") = py::none(),
      py::arg("n_steps") = py::none(),
      "Forward RK4 solve on the model's default horizon; returns (t, states[n_nodes, dim]).");

  m.def(
      "objective",
      [](const std::string& name, const Eigen::VectorXd& params, const Eigen::MatrixXd& target,
         double alpha, const std::optional<Eigen::VectorXd>& y0) {
        const Setup s = setup(name, params, y0, static_cast<int>(target.rows()) - 1);
        return evaluate_objective(*s.model, params, target_from(s.config.grid(), target), alpha)
            .value;
      },
      py::arg("model"), py::arg("params"), py::arg("target"), py::arg("alpha") = 0.0,
      py::arg("y0") = py::none(), "J(u) against target states[n_nodes, dim]; +inf on divergence.");

  m.def(
      "gradient",
      [](const std::string& name, const Eigen::VectorXd& params, const Eigen::MatrixXd& target,
         double alpha, const std::optional<Eigen::VectorXd>& y0) {
        const Setup s = setup(name, params, y0, static_cast<int>(target.rows()) - 1);
        return evaluate_gradient(*s.model, params, target_from(s.config.grid(), target), alpha)
            .gradient;
      },
      py::arg("model"), py::arg("params"), py::arg("target"), py::arg("alpha") = 0.0,
      py::arg("y0") = py::none(), "Adjoint gradient of J.");

  m.def(
      "gradient_check",
      [](const std::string& name, const Eigen::VectorXd& params, const Eigen::MatrixXd& target,
         double alpha, double step) {
        const Setup s = setup(name, params, std::nullopt, static_cast<int>(target.rows()) - 1);
        const GradientCheckReport r =
            gradient_check(*s.model, params, target_from(s.config.grid(), target), alpha, step);
        Eigen::VectorXd adjoint(r.rows.size()), fd(r.rows.size());
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
          adjoint[static_cast<Eigen::Index>(i)] = r.rows[i].adjoint;
          fd[static_cast<Eigen::Index>(i)] = r.rows[i].finite_difference;
        }
        py::dict d;
        d["adjoint"] = adjoint;
        d["finite_difference"] = fd;
        d["max_relative_error"] = r.max_relative_error;
        d["absolute"] = r.absolute;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("model"), py::arg("params"), py::arg("target"), py::arg("alpha") = 0.0,
      py::arg("step") = 1e-6);

  m.def(
      "default_config_text",
      [](const std::string& name) { return serialize_config(default_config(name)); },
      py::arg("model"), "Every configuration key with the model's defaults.");

  m.def(
      "estimate",
      [](const std::string& config_text, const std::vector<std::string>& overrides) {
        const ExperimentConfig config = parse_config_text(config_text, overrides);
        ExperimentReport report;
        {
          py::gil_scoped_release release;
          report = run_experiment(config);
        }
        return report_dict(report);
      },
      py::arg("config_text"), py::arg("overrides") = std::vector<std::string>{},
      "Runs one identification from configuration text and returns the report.");
}
