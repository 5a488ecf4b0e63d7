#include "estim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace estim {

Trajectory::Trajectory(TimeGrid grid, Eigen::MatrixXd states)
    : grid_(grid), states_(std::move(states)) {
  if (states_.rows() == 0) {
    throw std::invalid_argument("trajectory state dimension must be positive");
  }
  if (static_cast<std::size_t>(states_.cols()) != grid_.n_nodes()) {
    throw std::invalid_argument("trajectory needs one state per grid node");
  }
  if (!states_.allFinite()) {
    throw std::invalid_argument("trajectory entries must be finite");
  }
}

Eigen::VectorXd sample_trajectory(const Trajectory& traj, double t) {
  const TimeGrid& grid = traj.grid();
  if (!(t >= grid.t_start() && t <= grid.t_end())) {
    throw std::out_of_range("sample time outside the trajectory grid");
  }
  const double s = (t - grid.t_start()) / grid.step();
  int k = static_cast<int>(std::floor(s));
  k = std::clamp(k, 0, grid.n_steps() - 1);
  const double t0 = grid.node(k);
  const double t1 = grid.node(k + 1);
  if (t == t0) return traj.state(static_cast<std::size_t>(k));
  if (t == t1) return traj.state(static_cast<std::size_t>(k) + 1);
  const double theta = (t - t0) / (t1 - t0);
  return (1.0 - theta) * traj.state(static_cast<std::size_t>(k)) +
         theta * traj.state(static_cast<std::size_t>(k) + 1);
}

}  // namespace estim
