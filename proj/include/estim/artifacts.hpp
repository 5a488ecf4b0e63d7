#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "estim/experiment.hpp"
#include "estim/history.hpp"
#include "estim/trajectory.hpp"

namespace estim {

namespace fs = std::filesystem;

/// Full-precision scientific notation ("%.17e"); non-finite values print as
/// inf, -inf or nan.
std::string format_number(double value);

/// Writes to a sibling temporary file and renames it over `path`. Throws
/// std::runtime_error naming the path on failure.
void write_file_atomic(const fs::path& path, const std::string& content);

/// Header `parameter,true,recovered,relative_error`, one row per parameter.
std::string summary_csv(const ExperimentReport& report);

/// Header `k,J,grad_norm,gTd,alpha,beta`, one row per iterate. Fields that do
/// not apply to an iterate (no step taken, no beta) are left empty.
std::string history_csv(const OptimizationHistory& history);

/// Header `t,y{i},y{i}_target` (i is 1-based), one row per node.
std::string trajectory_csv(const Trajectory& fitted, const Trajectory& target, int component);

/// Header `t,y1,...,yn`, one row per node.
std::string simulation_csv(const Trajectory& trajectory);

std::string metadata_json(const ExperimentReport& report);

/// Python script that plots every trajectory_y{i}.csv next to it.
std::string plot_script(int state_dim);

fs::path write_summary(const ExperimentReport& report, const fs::path& directory);
fs::path write_history_csv(const OptimizationHistory& history, const fs::path& directory);
std::vector<fs::path> write_trajectory_csvs(const Trajectory& fitted, const Trajectory& target,
                                            const fs::path& directory);
fs::path write_metadata(const ExperimentReport& report, const fs::path& directory);

/// Writes every artifact selected by report.config.output_formats ("csv":
/// summary, history and trajectories; "json": metadata; "plot": plot.py).
/// Creates `directory` if needed and returns the written paths.
std::vector<fs::path> write_artifacts(const ExperimentReport& report, const fs::path& directory);

/// One row of a consolidated recovery table.
struct TableRow {
  std::string label;
  Eigen::VectorXd values;
  std::string status;  ///< empty for the reference row
};

/// Header `row,<param names...>,status`.
std::string table_csv(const std::vector<std::string>& param_names,
                      const std::vector<TableRow>& rows);

}  // namespace estim
