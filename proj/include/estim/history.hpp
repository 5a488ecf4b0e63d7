#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace estim {

enum class TerminalStatus { Converged, MaxIterations, LineSearchFailure, Diverged };

std::string_view to_string(TerminalStatus status);

/// One accepted iterate u_k. `slope`, `step` and `beta` are NaN when the
/// iterate produced no search direction or step (e.g. the final iterate of a
/// converged run, or beta outside NCG).
struct IterationRecord {
  static constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

  int k = 0;
  double value = kNone;      ///< J(u_k)
  double grad_norm = kNone;  ///< |g_k|_2
  double slope = kNone;      ///< g_k^T d_k
  double step = kNone;       ///< alpha_k taken from u_k
  double beta = kNone;       ///< beta_k used to build d_k
  double wall_time = 0.0;    ///< seconds since the run started
  int backtracks = 0;        ///< step halvings before acceptance
  std::string note;
  Eigen::VectorXd params;
  Eigen::VectorXd gradient;
  Eigen::VectorXd direction;  ///< empty when no direction was formed

  bool has_step() const { return step == step; }
};

struct OptimizationHistory {
  std::vector<IterationRecord> records;
  TerminalStatus status = TerminalStatus::MaxIterations;
  std::string message;

  /// Number of steps taken (records that carry a step).
  int steps() const;
  const IterationRecord& last() const { return records.back(); }
};

}  // namespace estim
