#pragma once

#include <Eigen/Dense>

#include "estim/time_grid.hpp"

namespace estim {

/// State vectors stored at every node of a TimeGrid. Column k of `states()`
/// holds the state at grid.node(k).
class Trajectory {
 public:
  /// Throws std::invalid_argument if the column count differs from
  /// grid.n_nodes(), the dimension is zero, or any entry is not finite.
  Trajectory(TimeGrid grid, Eigen::MatrixXd states);

  const TimeGrid& grid() const { return grid_; }
  int dim() const { return static_cast<int>(states_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(states_.cols()); }

  const Eigen::MatrixXd& states() const { return states_; }
  Eigen::MatrixXd::ConstColXpr state(std::size_t k) const {
    return states_.col(static_cast<Eigen::Index>(k));
  }

 private:
  TimeGrid grid_;
  Eigen::MatrixXd states_;
};

/// Linear interpolation between the bracketing nodes; exact at nodes.
/// Throws std::out_of_range when t lies outside the grid.
Eigen::VectorXd sample_trajectory(const Trajectory& traj, double t);

}  // namespace estim
