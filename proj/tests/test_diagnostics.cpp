#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "estim/diagnostics.hpp"
#include "estim/experiment.hpp"
#include "estim/optimizers.hpp"

using namespace estim;

namespace {

IterationRecord record(int k, double value, double grad_norm, double slope, double beta) {
  IterationRecord rec;
  rec.k = k;
  rec.value = value;
  rec.grad_norm = grad_norm;
  rec.slope = slope;
  rec.beta = beta;
  return rec;
}

OptimizationHistory geometric_history(double ratio, int n) {
  OptimizationHistory h;
  for (int k = 0; k < n; ++k) h.records.push_back(record(k, 100.0 * std::pow(ratio, k), 1.0, -1.0, 0.0));
  // The final value anchors the excess; a zero tail keeps every earlier
  // excess equal to the geometric term.
  h.records.back().value = 0.0;
  return h;
}

Eigen::Matrix2d diag(double a, double b) {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST(DescentBounds, SteepestDirectionSitsOnTheBand) {
  OptimizationHistory h;
  h.records.push_back(record(0, 1.0, 2.0, -4.0, IterationRecord::kNone));
  const RateReport r = check_descent_bounds(h, 0.4);
  EXPECT_EQ(r.band_checked, 1);
  EXPECT_EQ(r.albaali_violations, 0);
  EXPECT_EQ(r.corollary_violations, 0);
}

TEST(DescentBounds, AscentSlopeIsAViolation) {
  OptimizationHistory h;
  h.records.push_back(record(0, 1.0, 1.0, -1.0, IterationRecord::kNone));
  h.records.push_back(record(1, 0.5, 1.0, 0.1, 0.5));
  h.records.push_back(record(2, 0.25, 1.0, IterationRecord::kNone, 0.5));
  const RateReport r = check_descent_bounds(h, 0.4);
  EXPECT_EQ(r.band_checked, 2);
  EXPECT_EQ(r.albaali_violations, 1);
  EXPECT_EQ(r.corollary_violations, 1);
}

TEST(DescentBounds, BandEdges) {
  // sigma = 0.4: ratio band is [-5/3, -1/3]; corollary factor 3.
  OptimizationHistory h;
  h.records.push_back(record(0, 1.0, 1.0, -5.0 / 3.0, 0.0));
  h.records.push_back(record(1, 1.0, 1.0, -1.0 / 3.0, 0.0));
  h.records.push_back(record(2, 1.0, 1.0, -1.7, 0.0));
  h.records.push_back(record(3, 1.0, 1.0, -0.3, 0.0));
  const RateReport r = check_descent_bounds(h, 0.4);
  EXPECT_EQ(r.albaali_violations, 2);
  EXPECT_EQ(r.corollary_violations, 1);
}

TEST(DecayLemma, BaseCaseAndGeometricDecay) {
  OptimizationHistory h;
  h.records.push_back(record(0, 1.0, 1.0, -1.0, IterationRecord::kNone));
  h.records.push_back(record(1, 0.5, 1.0, -0.9, 2.0));
  h.records.push_back(record(2, 0.25, 1.0, -0.7, 2.0));
  const RateReport ok = check_decay_lemma(h, 0.4);
  EXPECT_FALSE(ok.decay_lemma_skipped);
  EXPECT_EQ(ok.decay_pairs_checked, 3);
  EXPECT_EQ(ok.decay_lemma_violations, 0);
  EXPECT_DOUBLE_EQ(ok.beta_max, 2.0);

  h.records[2].slope = -0.85;  // exceeds (0.8)^1 * 1.0
  EXPECT_EQ(check_decay_lemma(h, 0.4).decay_lemma_violations, 1);
}

TEST(DecayLemma, SkippedWhenHypothesisFails) {
  OptimizationHistory h;
  h.records.push_back(record(0, 1.0, 1.0, -1.0, IterationRecord::kNone));
  h.records.push_back(record(1, 0.5, 1.0, -0.5, 3.0));
  const RateReport r = check_decay_lemma(h, 0.4);
  EXPECT_TRUE(r.decay_lemma_skipped);
  EXPECT_EQ(r.note, "hypothesis unmet: beta * sigma > 1");
  EXPECT_EQ(r.decay_pairs_checked, 0);
}

TEST(DecayLemma, CountMatchesDirectRecountOnNcgRun) {
  const auto result = ncg_minimize(quadratic_problem(diag(1.0, 2.0)), Eigen::Vector2d(1.0, 1.0),
                                   BetaRule::FletcherReeves, WolfeConfig{}, OptimizerConfig{});
  const auto& recs = result.history.records;
  double beta = 0.0;
  for (const auto& r : recs) {
    if (std::isfinite(r.beta)) beta = std::max(beta, r.beta);
  }
  const double q = beta * 0.4;
  ASSERT_LE(q, 1.0);
  int pairs = 0, violations = 0;
  for (std::size_t k = 0; k < recs.size(); ++k) {
    for (std::size_t l = k + 1; l < recs.size(); ++l) {
      if (!std::isfinite(recs[k].slope) || !std::isfinite(recs[l].slope)) continue;
      ++pairs;
      const double bound = std::pow(q, static_cast<double>(l - k - 1)) * std::abs(recs[k].slope);
      if (std::abs(recs[l].slope) > bound * (1.0 + 1e-8)) ++violations;
    }
  }
  const RateReport r = check_decay_lemma(result.history, 0.4);
  EXPECT_FALSE(r.decay_lemma_skipped);
  EXPECT_EQ(r.decay_pairs_checked, pairs);
  EXPECT_EQ(r.decay_lemma_violations, violations);
}

TEST(DecayLemma, OneStepBoundKeepsTheGradientTerm) {
  // Strong Wolfe gives |g_{k+1}^T d_{k+1}| <= |g_{k+1}|^2 + beta sigma |g_k^T d_k|.
  for (BetaRule rule : {BetaRule::FletcherReeves, BetaRule::PolakRibiere,
                        BetaRule::HestenesStiefel, BetaRule::DaiYuan}) {
    const auto result = ncg_minimize(quadratic_problem(diag(1.0, 10.0)), Eigen::Vector2d(1.0, 1.0),
                                     rule, WolfeConfig{}, OptimizerConfig{});
    const auto& recs = result.history.records;
    for (std::size_t k = 0; k + 1 < recs.size(); ++k) {
      const auto& next = recs[k + 1];
      if (!std::isfinite(next.slope) || !std::isfinite(next.beta)) continue;
      const double bound = next.grad_norm * next.grad_norm + next.beta * 0.4 * std::abs(recs[k].slope);
      EXPECT_LE(std::abs(next.slope), bound * (1.0 + 1e-10)) << to_string(rule) << " k=" << k;
    }
  }
}

TEST(Rate, GeometricSequenceIsRecovered) {
  const RateReport r = estimate_linear_rate(geometric_history(0.5, 30));
  EXPECT_NEAR(r.estimated_rate, 0.5, 1e-6);
  EXPECT_NEAR(r.r_squared, 1.0, 1e-12);
  EXPECT_EQ(r.fitted_points, 29);
}

TEST(Rate, SteepestDescentOnQuadraticIsLinear) {
  OptimizerConfig cfg;
  cfg.lipschitz_xi = 4.0;  // step 1/8
  cfg.tolerance = 1e-20;
  cfg.max_iterations = 200;
  const auto result =
      steepest_descent_fixed(quadratic_problem(diag(1.0, 4.0)), Eigen::Vector2d(1.0, 1.0), cfg);
  const RateReport r = estimate_linear_rate(result.history, 1e-30);
  EXPECT_LT(r.estimated_rate, 1.0);
  EXPECT_GE(r.r_squared, 0.99);
  // J excess decays like (1 - 1/8)^(2k) once the stiff mode is gone.
  EXPECT_NEAR(r.estimated_rate, 0.875 * 0.875, 1e-2);
}

TEST(Rate, TooFewPointsThrows) {
  EXPECT_THROW(estimate_linear_rate(geometric_history(0.5, 3)), std::invalid_argument);
  EXPECT_THROW(estimate_linear_rate(OptimizationHistory{}), std::invalid_argument);
}

TEST(WolfeAuditTest, NcgStepsPassAndTamperedStepFails) {
  const FunctionProblem problem = quadratic_problem(diag(1.0, 10.0));
  const WolfeConfig wolfe;
  OptimizerConfig cfg;
  cfg.tolerance = 1e-12;
  auto result = ncg_minimize(problem, Eigen::Vector2d(1.0, 1.0), BetaRule::PolakRibiere, wolfe, cfg);
  const WolfeAudit clean = audit_wolfe_steps(problem, result.history, wolfe);
  EXPECT_EQ(clean.steps_checked, result.history.steps());
  EXPECT_EQ(clean.sufficient_decrease_violations + clean.curvature_violations, 0);

  result.history.records.front().step *= 4.0;
  const WolfeAudit tampered = audit_wolfe_steps(problem, result.history, wolfe);
  EXPECT_GT(tampered.sufficient_decrease_violations + tampered.curvature_violations, 0);
}

TEST(Monotonicity, StrictlyDecreasing) {
  OptimizationHistory h;
  h.records.push_back(record(0, 2.0, 1.0, -1.0, 0.0));
  h.records.push_back(record(1, 1.0, 1.0, -1.0, 0.0));
  EXPECT_TRUE(strictly_decreasing(h));
  h.records.push_back(record(2, 1.0, 1.0, -1.0, 0.0));
  EXPECT_FALSE(strictly_decreasing(h));
}
