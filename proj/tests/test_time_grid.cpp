#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "estim/ode.hpp"
#include "estim/time_grid.hpp"
#include "estim/trajectory.hpp"

using namespace estim;

TEST(TimeGrid, QuarterSteps) {
  const TimeGrid grid(0.0, 1.0, 4);
  ASSERT_EQ(grid.n_nodes(), 5u);
  const double expected[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int k = 0; k < 5; ++k) EXPECT_DOUBLE_EQ(grid.node(k), expected[k]);
  EXPECT_DOUBLE_EQ(grid.step(), 0.25);
}

TEST(TimeGrid, LastNodeIsExactEndpoint) {
  const TimeGrid grid(0.1, 0.7, 3);
  EXPECT_EQ(grid.node(3), 0.7);
  EXPECT_EQ(grid.node(0), 0.1);
}

TEST(TimeGrid, RejectsInvalidInput) {
  EXPECT_THROW(TimeGrid(0.0, 10.0, 1), std::invalid_argument);
  EXPECT_THROW(TimeGrid(2.0, 2.0, 10), std::invalid_argument);
  EXPECT_THROW(TimeGrid(3.0, 2.0, 10), std::invalid_argument);
  EXPECT_THROW(TimeGrid(0.0, std::numeric_limits<double>::infinity(), 10),
               std::invalid_argument);
  EXPECT_THROW(TimeGrid(std::nan(""), 1.0, 10), std::invalid_argument);
}

TEST(Trajectory, RejectsShapeMismatchAndNonFinite) {
  const TimeGrid grid(0.0, 1.0, 2);
  EXPECT_THROW(Trajectory(grid, Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(1, 3);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Trajectory(grid, bad), std::invalid_argument);
  EXPECT_THROW(Trajectory(grid, Eigen::MatrixXd(0, 3)), std::invalid_argument);
}

TEST(Trajectory, SampleIsExactAtNodes) {
  const TimeGrid grid(0.0, 1.0, 4);
  Eigen::MatrixXd states(2, 5);
  states << 0, 1, 4, 9, 16, 5, 4, 3, 2, 1;
  const Trajectory traj(grid, states);
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXd s = sample_trajectory(traj, grid.node(k));
    EXPECT_EQ(s[0], states(0, k));
    EXPECT_EQ(s[1], states(1, k));
  }
}

TEST(Trajectory, SampleInterpolatesLinearly) {
  const TimeGrid grid(0.0, 2.0, 2);
  Eigen::MatrixXd states(1, 3);
  states << 0.0, 2.0, 2.0;
  const Trajectory traj(grid, states);
  EXPECT_DOUBLE_EQ(sample_trajectory(traj, 0.5)[0], 1.0);
}

TEST(Trajectory, SampleOutsideGridThrows) {
  const TimeGrid grid(0.0, 1.0, 2);
  const Trajectory traj(grid, Eigen::MatrixXd::Zero(1, 3));
  EXPECT_THROW(sample_trajectory(traj, -0.01), std::out_of_range);
  EXPECT_THROW(sample_trajectory(traj, 1.01), std::out_of_range);
}

TEST(Quadrature, ConstantIntegrand) {
  const TimeGrid grid(0.0, 2.0, 7);
  EXPECT_DOUBLE_EQ(quadrature(grid, Eigen::VectorXd::Ones(8)), 2.0);
}

TEST(Quadrature, ExactOnLinearFunctions) {
  for (int n : {2, 3, 10, 101}) {
    const TimeGrid grid(0.0, 1.0, n);
    Eigen::VectorXd f(n + 1);
    for (int k = 0; k <= n; ++k) f[k] = grid.node(k);
    EXPECT_NEAR(quadrature(grid, f), 0.5, 1e-15) << "n_steps = " << n;
  }
}

TEST(Quadrature, SquareWithinTrapezoidError) {
  const TimeGrid grid(0.0, 1.0, 100);
  Eigen::VectorXd f(101);
  for (int k = 0; k <= 100; ++k) f[k] = grid.node(k) * grid.node(k);
  EXPECT_NEAR(quadrature(grid, f), 1.0 / 3.0, 1e-4);
}

TEST(Quadrature, RejectsLengthMismatch) {
  const TimeGrid grid(0.0, 1.0, 4);
  EXPECT_THROW(quadrature(grid, Eigen::VectorXd::Ones(4)), std::invalid_argument);
}
