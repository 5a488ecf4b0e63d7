#include "estim/artifacts.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <Eigen/Core>
#include "json.hpp"

#include "estim/config.hpp"

#ifndef ESTIM_VERSION
#define ESTIM_VERSION "unknown"
#endif

namespace estim {

namespace {

using nlohmann::json;

std::string optional_number(double value) {
  return std::isnan(value) ? std::string() : format_number(value);
}

json number_or_null(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v[i]));
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", value);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path.string() +
                             "': " + ec.message());
  }
}

std::string summary_csv(const ExperimentReport& report) {
  std::string out = "parameter,true,recovered,relative_error\n";
  for (Eigen::Index i = 0; i < report.true_params.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const std::string name =
        idx < report.param_names.size() ? report.param_names[idx] : "u" + std::to_string(i + 1);
    const bool has = i < report.recovered_params.size();
    out += name + ',' + format_number(report.true_params[i]) + ',' +
           (has ? format_number(report.recovered_params[i]) : std::string()) + ',' +
           (i < report.relative_errors.size() ? format_number(report.relative_errors[i])
                                              : std::string()) +
           '\n';
  }
  return out;
}

std::string history_csv(const OptimizationHistory& history) {
  std::string out = "k,J,grad_norm,gTd,alpha,beta\n";
  for (const auto& r : history.records) {
    out += std::to_string(r.k) + ',' + format_number(r.value) + ',' + format_number(r.grad_norm) +
           ',' + optional_number(r.slope) + ',' + optional_number(r.step) + ',' +
           optional_number(r.beta) + '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& fitted, const Trajectory& target, int component) {
  if (!(fitted.grid() == target.grid())) {
    throw std::invalid_argument("fitted and target trajectories use different grids");
  }
  const std::string y = "y" + std::to_string(component + 1);
  std::string out = "t," + y + ',' + y + "_target\n";
  const TimeGrid& grid = fitted.grid();
  for (int k = 0; k < static_cast<int>(grid.n_nodes()); ++k) {
    out += format_number(grid.node(k)) + ',' + format_number(fitted.states()(component, k)) + ',' +
           format_number(target.states()(component, k)) + '\n';
  }
  return out;
}

std::string simulation_csv(const Trajectory& trajectory) {
  std::string out = "t";
  const auto dim = trajectory.states().rows();
  for (Eigen::Index i = 0; i < dim; ++i) out += ",y" + std::to_string(i + 1);
  out += '\n';
  const TimeGrid& grid = trajectory.grid();
  for (int k = 0; k < static_cast<int>(grid.n_nodes()); ++k) {
    out += format_number(grid.node(k));
    for (Eigen::Index i = 0; i < dim; ++i) out += ',' + format_number(trajectory.states()(i, k));
    out += '\n';
  }
  return out;
}

std::string metadata_json(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  json config = {
      {"model",
       {{"name", c.model_name},
        {"true_params", vector_json(c.true_params)},
        {"y0", vector_json(c.y0)},
        {"t_span", {c.t_start, c.t_end}},
        {"n_steps", c.n_steps}}},
      {"noise", {{"level", c.noise_level}, {"seed", c.seed}}},
      {"objective", {{"alpha", c.alpha}, {"overflow_bound", c.overflow_bound}}},
      {"init",
       {{"mode", std::string(to_string(c.init_mode))},
        {"u0", vector_json(c.u0)},
        {"box",
         {{"lower", vector_json(c.box.lower)},
          {"upper", vector_json(c.box.upper)},
          {"points", c.box.points_per_dim},
          {"budget", c.box.budget}}}}},
      {"optimizer",
       {{"name", std::string(to_string(c.optimizer))},
        {"variant", std::string(to_string(c.variant))},
        {"epsilon", c.optimizer_config.tolerance},
        {"max_iterations", c.optimizer_config.max_iterations},
        {"xi", c.optimizer_config.lipschitz_xi},
        {"initial_step", c.optimizer_config.initial_step},
        {"rho", c.wolfe.rho},
        {"sigma", c.wolfe.sigma},
        {"max_zoom", c.wolfe.max_zoom},
        {"alpha_max", c.wolfe.alpha_max}}},
      {"output", {{"directory", c.output_directory}, {"formats", c.output_formats}}},
  };
  json rates = {
      {"estimated_rate", number_or_null(report.rates.estimated_rate)},
      {"r_squared", number_or_null(report.rates.r_squared)},
      {"fitted_points", report.rates.fitted_points},
      {"albaali_violations", report.rates.albaali_violations},
      {"corollary_violations", report.rates.corollary_violations},
      {"band_checked", report.rates.band_checked},
      {"decay_lemma_violations", report.rates.decay_lemma_violations},
      {"decay_pairs_checked", report.rates.decay_pairs_checked},
      {"decay_lemma_skipped", report.rates.decay_lemma_skipped},
      {"beta_max", number_or_null(report.rates.beta_max)},
      {"note", report.rates.note},
  };
  json doc = {
      {"config", config},
      {"config_text", serialize_config(c)},
      {"status", std::string(to_string(report.status()))},
      {"message", report.history.message},
      {"failed", report.failed},
      {"error", report.error},
      {"iterations", report.history.steps()},
      {"final_objective", number_or_null(report.final_objective)},
      {"initial_params", vector_json(report.initial_params)},
      {"recovered_params", vector_json(report.recovered_params)},
      {"relative_errors", vector_json(report.relative_errors)},
      {"rates", rates},
      {"wall_time_seconds", report.wall_time},
      {"timestamp", utc_timestamp()},
      {"versions",
       {{"estim", ESTIM_VERSION},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + '.' +
                      std::to_string(EIGEN_MAJOR_VERSION) + '.' +
                      std::to_string(EIGEN_MINOR_VERSION)},
        {"compiler", __VERSION__}}},
  };
  if (report.wolfe_audit) {
    doc["wolfe_audit"] = {
        {"steps_checked", report.wolfe_audit->steps_checked},
        {"sufficient_decrease_violations", report.wolfe_audit->sufficient_decrease_violations},
        {"curvature_violations", report.wolfe_audit->curvature_violations}};
  }
  return doc.dump(2) + '\n';
}

std::string plot_script(int state_dim) {
  std::string out =
      "import csv\n"
      "import pathlib\n"
      "\n"
      "import matplotlib.pyplot as plt\n"
      "\n"
      "here = pathlib.Path(__file__).resolve().parent\n"
      "fig, axes = plt.subplots(" +
      std::to_string(state_dim) +
      ", 1, sharex=True, squeeze=False)\n"
      "for i, ax in enumerate(axes[:, 0], start=1):\n"
      "    with open(here / f\"trajectory_y{i}.csv\", newline=\"\") as fh:\n"
      "        rows = list(csv.DictReader(fh))\n"
      "    t = [float(r[\"t\"]) for r in rows]\n"
      "    ax.plot(t, [float(r[f\"y{i}_target\"]) for r in rows], \".\", ms=2, label=\"target\")\n"
      "    ax.plot(t, [float(r[f\"y{i}\"]) for r in rows], \"-\", label=\"fitted\")\n"
      "    ax.set_ylabel(f\"y{i}\")\n"
      "    ax.legend()\n"
      "axes[-1, 0].set_xlabel(\"t\")\n"
      "fig.savefig(here / \"trajectories.png\", dpi=150)\n";
  return out;
}

fs::path write_summary(const ExperimentReport& report, const fs::path& directory) {
  const fs::path path = directory / "summary.csv";
  write_file_atomic(path, summary_csv(report));
  return path;
}

fs::path write_history_csv(const OptimizationHistory& history, const fs::path& directory) {
  const fs::path path = directory / "history.csv";
  write_file_atomic(path, history_csv(history));
  return path;
}

std::vector<fs::path> write_trajectory_csvs(const Trajectory& fitted, const Trajectory& target,
                                            const fs::path& directory) {
  std::vector<fs::path> paths;
  for (Eigen::Index i = 0; i < fitted.states().rows(); ++i) {
    const int component = static_cast<int>(i);
    paths.push_back(directory / ("trajectory_y" + std::to_string(component + 1) + ".csv"));
    write_file_atomic(paths.back(), trajectory_csv(fitted, target, component));
  }
  return paths;
}

fs::path write_metadata(const ExperimentReport& report, const fs::path& directory) {
  const fs::path path = directory / "metadata.json";
  write_file_atomic(path, metadata_json(report));
  return path;
}

std::vector<fs::path> write_artifacts(const ExperimentReport& report, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + directory.string() +
                             "': " + ec.message());
  }
  const auto wants = [&](const char* f) {
    const auto& formats = report.config.output_formats;
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };
  std::vector<fs::path> paths;
  if (wants("csv")) {
    paths.push_back(write_summary(report, directory));
    paths.push_back(write_history_csv(report.history, directory));
    if (report.fitted && report.target) {
      for (auto& p : write_trajectory_csvs(*report.fitted, *report.target, directory)) {
        paths.push_back(std::move(p));
      }
    }
  }
  if (wants("json")) paths.push_back(write_metadata(report, directory));
  if (wants("plot") && report.target) {
    paths.push_back(directory / "plot.py");
    write_file_atomic(paths.back(),
                      plot_script(static_cast<int>(report.target->states().rows())));
  }
  return paths;
}

std::string table_csv(const std::vector<std::string>& param_names,
                      const std::vector<TableRow>& rows) {
  std::string out = "row";
  for (const auto& n : param_names) out += ',' + n;
  out += ",status\n";
  for (const auto& r : rows) {
    out += r.label;
    for (std::size_t i = 0; i < param_names.size(); ++i) {
      const auto idx = static_cast<Eigen::Index>(i);
      out += ',' + (idx < r.values.size() ? format_number(r.values[idx]) : std::string());
    }
    out += ',' + r.status + '\n';
  }
  return out;
}

}  // namespace estim
