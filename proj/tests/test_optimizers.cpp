#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "estim/diagnostics.hpp"
#include "estim/optimizers.hpp"
#include "estim/problem.hpp"

using namespace estim;

namespace {

FunctionProblem half_square(int n) {
  return FunctionProblem(
      n, [](const Eigen::VectorXd& u) { return 0.5 * u.squaredNorm(); },
      [](const Eigen::VectorXd& u) -> Eigen::VectorXd { return u; });
}

FunctionProblem rosenbrock() {
  return FunctionProblem(
      2,
      [](const Eigen::VectorXd& u) {
        return 100.0 * std::pow(u[1] - u[0] * u[0], 2) + std::pow(1.0 - u[0], 2);
      },
      [](const Eigen::VectorXd& u) -> Eigen::VectorXd {
        Eigen::VectorXd g(2);
        g[0] = -400.0 * u[0] * (u[1] - u[0] * u[0]) - 2.0 * (1.0 - u[0]);
        g[1] = 200.0 * (u[1] - u[0] * u[0]);
        return g;
      });
}

OptimizerConfig tight(double tolerance = 1e-12) {
  OptimizerConfig cfg;
  cfg.tolerance = tolerance;
  return cfg;
}

}  // namespace

TEST(SteepestDescent, HalvesTheIterateOnUnitQuadratic) {
  OptimizerConfig cfg = tight(1e-20);
  cfg.lipschitz_xi = 1.0;
  const auto result = steepest_descent_fixed(half_square(2), Eigen::Vector2d(1.0, 0.0), cfg);
  EXPECT_EQ(result.history.status, TerminalStatus::Converged);
  for (const auto& rec : result.history.records) {
    EXPECT_EQ(rec.params[0], std::ldexp(1.0, -rec.k));
    EXPECT_EQ(rec.params[1], 0.0);
  }
  EXPECT_LT(result.params.squaredNorm(), 1e-20);
}

TEST(SteepestDescent, AlreadyConvergedTakesNoStep) {
  const Eigen::Vector2d u0(1e-8, 0.0);
  const auto result = steepest_descent_fixed(half_square(2), u0, tight());
  EXPECT_EQ(result.history.status, TerminalStatus::Converged);
  EXPECT_EQ(result.history.steps(), 0);
  EXPECT_EQ(result.params, u0);
}

TEST(SteepestDescent, NonFiniteObjectiveIsDivergence) {
  const FunctionProblem problem(
      1, [](const Eigen::VectorXd& u) { return u[0] < -0.5 ? std::nan("") : 0.5 * u[0] * u[0]; },
      [](const Eigen::VectorXd& u) -> Eigen::VectorXd { return u; });
  OptimizerConfig cfg = tight();
  cfg.lipschitz_xi = 0.25;  // step 2 overshoots to -u
  const auto result = steepest_descent_fixed(problem, Eigen::VectorXd::Ones(1), cfg);
  EXPECT_EQ(result.history.status, TerminalStatus::Diverged);
}

TEST(SteepestDescent, IterationBudget) {
  OptimizerConfig cfg = tight(1e-30);
  cfg.max_iterations = 3;
  cfg.lipschitz_xi = 10.0;
  const auto result = steepest_descent_fixed(half_square(1), Eigen::VectorXd::Ones(1), cfg);
  EXPECT_EQ(result.history.status, TerminalStatus::MaxIterations);
  EXPECT_EQ(result.history.steps(), 3);
}

TEST(Backtracking, OvershootingResetStepHalvesToDecrease) {
  // alpha* = 10 on u^2/2: trials 10, 5, 2.5 increase J, 1.25 maps u to -u/4.
  OptimizerConfig cfg = tight(1e-16);
  cfg.initial_step = 10.0;
  const auto result = backtracking_descent(half_square(1), Eigen::VectorXd::Ones(1), cfg);
  EXPECT_EQ(result.history.status, TerminalStatus::Converged);
  EXPECT_TRUE(strictly_decreasing(result.history));
  for (const auto& rec : result.history.records) {
    if (!rec.has_step()) continue;
    EXPECT_EQ(rec.step, 1.25);
    EXPECT_EQ(rec.backtracks, 3);
    EXPECT_EQ(rec.params[0], std::pow(-0.25, rec.k));
  }
}

TEST(Backtracking, AdmissibleResetStepActsAsFixedStep) {
  OptimizerConfig cfg = tight(1e-16);
  cfg.initial_step = 0.5;
  const auto result = backtracking_descent(half_square(1), Eigen::VectorXd::Ones(1), cfg);
  for (const auto& rec : result.history.records) {
    EXPECT_EQ(rec.backtracks, 0);
    EXPECT_EQ(rec.params[0], std::ldexp(1.0, -rec.k));
  }
}

TEST(Backtracking, NoDecreaseIsLineSearchFailure) {
  const FunctionProblem problem(
      1, [](const Eigen::VectorXd& u) { return 0.5 * u.squaredNorm(); },
      [](const Eigen::VectorXd& u) -> Eigen::VectorXd { return -u; });
  const auto result = backtracking_descent(problem, Eigen::VectorXd::Ones(1), tight());
  EXPECT_EQ(result.history.status, TerminalStatus::LineSearchFailure);
  EXPECT_EQ(result.history.steps(), 0);
}

TEST(Backtracking, RosenbrockIsMonotone) {
  OptimizerConfig cfg = tight(1e-10);
  cfg.max_iterations = 2000;
  const auto result = backtracking_descent(rosenbrock(), Eigen::Vector2d(-1.2, 1.0), cfg);
  EXPECT_TRUE(strictly_decreasing(result.history));
  EXPECT_EQ(result.history.steps(), 2000);
  EXPECT_LT(result.history.last().value, 1e-2 * result.history.records.front().value);
}

TEST(Beta, EqualGradients) {
  const Eigen::Vector2d g(1.0, 2.0), d(-1.0, -2.0);
  EXPECT_EQ(compute_beta(BetaRule::FletcherReeves, g, g, d).value, 1.0);
  EXPECT_EQ(compute_beta(BetaRule::PolakRibiere, g, g, d).value, 0.0);
  const BetaValue hs = compute_beta(BetaRule::HestenesStiefel, g, g, d);
  EXPECT_EQ(hs.value, 0.0);
  EXPECT_FALSE(hs.note.empty());
}

TEST(Beta, HandComputedValues) {
  const Eigen::Vector2d g_prev(1.0, 0.0), g(0.0, 2.0), d_prev(-1.0, 0.0);
  for (BetaRule rule : {BetaRule::FletcherReeves, BetaRule::PolakRibiere,
                        BetaRule::HestenesStiefel, BetaRule::DaiYuan}) {
    const BetaValue b = compute_beta(rule, g, g_prev, d_prev);
    EXPECT_DOUBLE_EQ(b.value, 4.0) << to_string(rule);
    EXPECT_TRUE(b.note.empty());
  }
}

TEST(Beta, NegativeValueIsClamped) {
  // g^T (g - g_prev) = 1 - 2 < 0
  const BetaValue b = compute_beta(BetaRule::PolakRibiere, Eigen::Vector2d(1.0, 0.0),
                                   Eigen::Vector2d(2.0, 0.0), Eigen::Vector2d(-2.0, 0.0));
  EXPECT_EQ(b.value, 0.0);
  EXPECT_NE(b.note.find("clamped"), std::string::npos);
}

TEST(Beta, ParseRuleNames) {
  EXPECT_EQ(parse_beta_rule("fr"), BetaRule::FletcherReeves);
  EXPECT_EQ(parse_beta_rule("PR"), BetaRule::PolakRibiere);
  EXPECT_EQ(parse_beta_rule("hs"), BetaRule::HestenesStiefel);
  EXPECT_EQ(parse_beta_rule("dy"), BetaRule::DaiYuan);
  try {
    parse_beta_rule("cd");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("fr, pr, hs, dy"), std::string::npos);
  }
}

TEST(Ncg, QuadraticConvergesWithinTwentyFiveSteps) {
  Eigen::Matrix2d a;
  a << 1.0, 0.0, 0.0, 10.0;
  for (BetaRule rule : {BetaRule::FletcherReeves, BetaRule::PolakRibiere,
                        BetaRule::HestenesStiefel, BetaRule::DaiYuan}) {
    const auto result =
        ncg_minimize(quadratic_problem(a), Eigen::Vector2d(1.0, 1.0), rule, WolfeConfig{}, tight());
    EXPECT_EQ(result.history.status, TerminalStatus::Converged) << to_string(rule);
    EXPECT_LE(result.history.steps(), 25) << to_string(rule);
    EXPECT_LT((a * result.params).squaredNorm(), 1e-12);
  }
}

TEST(Ncg, StartingAtMinimumReturnsImmediately) {
  Eigen::Matrix2d a;
  a << 1.0, 0.0, 0.0, 10.0;
  const auto result = ncg_minimize(quadratic_problem(a), Eigen::Vector2d::Zero(),
                                   BetaRule::FletcherReeves, WolfeConfig{}, tight());
  EXPECT_EQ(result.history.status, TerminalStatus::Converged);
  EXPECT_EQ(result.history.steps(), 0);
  ASSERT_EQ(result.history.records.size(), 1u);
}

TEST(Ncg, RosenbrockAllVariants) {
  for (BetaRule rule : {BetaRule::FletcherReeves, BetaRule::PolakRibiere,
                        BetaRule::HestenesStiefel, BetaRule::DaiYuan}) {
    OptimizerConfig cfg = tight(1e-14);
    cfg.max_iterations = 20000;
    const auto result = ncg_minimize(rosenbrock(), Eigen::Vector2d(-1.2, 1.0), rule,
                                     WolfeConfig{}, cfg);
    EXPECT_EQ(result.history.status, TerminalStatus::Converged) << to_string(rule);
    EXPECT_NEAR(result.params[0], 1.0, 1e-5) << to_string(rule);
    EXPECT_NEAR(result.params[1], 1.0, 1e-5) << to_string(rule);
    if (rule == BetaRule::FletcherReeves) {
      EXPECT_EQ(check_descent_bounds(result.history, 0.4).albaali_violations, 0);
    }
  }
}

TEST(Ncg, IterationBudgetAndFirstDirection) {
  OptimizerConfig cfg = tight(1e-30);
  cfg.max_iterations = 1;
  const auto result = ncg_minimize(rosenbrock(), Eigen::Vector2d(-1.2, 1.0),
                                   BetaRule::FletcherReeves, WolfeConfig{}, cfg);
  EXPECT_EQ(result.history.status, TerminalStatus::MaxIterations);
  EXPECT_EQ(result.history.steps(), 1);
  const auto& first = result.history.records.front();
  EXPECT_EQ(first.direction, -first.gradient);
  EXPECT_DOUBLE_EQ(first.slope, -first.grad_norm * first.grad_norm);
}

TEST(Ncg, WolfeViolationsAreAbsentOnRecordedSteps) {
  const FunctionProblem problem = rosenbrock();
  OptimizerConfig cfg = tight(1e-14);
  cfg.max_iterations = 5000;
  const WolfeConfig wolfe;
  const auto result =
      ncg_minimize(problem, Eigen::Vector2d(-1.2, 1.0), BetaRule::PolakRibiere, wolfe, cfg);
  const WolfeAudit audit = audit_wolfe_steps(problem, result.history, wolfe);
  EXPECT_EQ(audit.steps_checked, result.history.steps());
  EXPECT_EQ(audit.sufficient_decrease_violations, 0);
  EXPECT_EQ(audit.curvature_violations, 0);
}

TEST(OptimizerConfig, Validation) {
  OptimizerConfig cfg;
  cfg.tolerance = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.lipschitz_xi = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = OptimizerConfig{};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
