#pragma once

#include <cstddef>

namespace estim {

/// Uniform discretization of [t_start, t_end] into n_steps intervals.
class TimeGrid {
 public:
  /// Throws std::invalid_argument for non-finite endpoints, an empty or
  /// reversed interval, or n_steps < 2.
  TimeGrid(double t_start, double t_end, int n_steps);

  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  int n_steps() const { return n_steps_; }
  std::size_t n_nodes() const { return static_cast<std::size_t>(n_steps_) + 1; }
  double step() const { return h_; }

  /// node(0) == t_start and node(n_steps) == t_end exactly.
  double node(int k) const { return k == n_steps_ ? t_end_ : t_start_ + k * h_; }

  bool operator==(const TimeGrid&) const = default;

 private:
  double t_start_;
  double t_end_;
  int n_steps_;
  double h_;
};

TimeGrid make_time_grid(double t_start, double t_end, int n_steps);

}  // namespace estim
