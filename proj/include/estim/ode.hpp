#pragma once

#include <Eigen/Dense>

#include "estim/dynamics_model.hpp"
#include "estim/time_grid.hpp"
#include "estim/trajectory.hpp"

namespace estim {

struct IntegrationOptions {
  /// A solve whose state exceeds this magnitude is reported as divergent.
  double overflow_bound = 1e12;
};

/// Classical fixed-step RK4 solution of dy/dt = F(t, y, u) from the model's
/// initial state. Throws DivergenceError on overflow or non-finite states.
Trajectory integrate_forward(const DynamicsModel& model, const VecIn& params, const TimeGrid& grid,
                             const IntegrationOptions& options = {});

/// Backward RK4 solve of -dp/dt - (dF/dy)^T p = y - y_target with p(t_end) = 0.
/// Forward and target values at half steps come from linear interpolation of
/// the stored nodes.
Trajectory integrate_adjoint(const DynamicsModel& model, const VecIn& params,
                             const Trajectory& forward, const Trajectory& target,
                             const IntegrationOptions& options = {});

/// Composite trapezoid rule over the grid nodes.
double quadrature(const TimeGrid& grid, const VecIn& values);

}  // namespace estim
