#include "estim/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace estim {

TimeGrid::TimeGrid(double t_start, double t_end, int n_steps)
    : t_start_(t_start), t_end_(t_end), n_steps_(n_steps), h_(0.0) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
    throw std::invalid_argument("time grid endpoints must be finite");
  }
  if (!(t_start < t_end)) {
    throw std::invalid_argument("time grid requires t_start < t_end");
  }
  if (n_steps < 2) {
    throw std::invalid_argument("time grid requires n_steps >= 2");
  }
  h_ = (t_end - t_start) / n_steps;
}

TimeGrid make_time_grid(double t_start, double t_end, int n_steps) {
  return TimeGrid(t_start, t_end, n_steps);
}

}  // namespace estim
