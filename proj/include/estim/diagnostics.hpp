#pragma once

#include <optional>
#include <string>

#include "estim/history.hpp"
#include "estim/line_search.hpp"
#include "estim/problem.hpp"

namespace estim {

/// Empirical convergence diagnostics of a run. Fields are filled by the
/// individual checks; unset fields keep their defaults.
struct RateReport {
  double estimated_rate = IterationRecord::kNone;
  double r_squared = IterationRecord::kNone;
  int fitted_points = 0;

  int albaali_violations = 0;    ///< descent-band violations
  int corollary_violations = 0;  ///< |g|^2 <= (1-s)/(1-2s) |g^T d| violations
  int band_checked = 0;

  int decay_lemma_violations = 0;
  int decay_pairs_checked = 0;
  bool decay_lemma_skipped = false;
  double beta_max = IterationRecord::kNone;
  double sigma = IterationRecord::kNone;

  std::string note;
};

/// Counts iterates whose ratio g^T d / |g|^2 leaves
/// [-1/(1-sigma), (2 sigma - 1)/(1-sigma)] by more than `slack` (relative),
/// and iterates violating |g|^2 <= (1-sigma)/(1-2 sigma) |g^T d| (only for
/// sigma < 1/2).
RateReport check_descent_bounds(const OptimizationHistory& history, double sigma,
                                double slack = 1e-10);

/// For every pair of recorded directions l >= k+1 checks
/// |g_l^T d_l| <= (beta sigma)^(l-k-1) |g_k^T d_k| with beta the largest
/// recorded beta. Skipped (and annotated) when beta sigma > 1.
RateReport check_decay_lemma(const OptimizationHistory& history, double sigma,
                             double slack = 1e-8);

/// Least-squares fit of log(J_k - J_final) against k over the records whose
/// excess exceeds `floor`. estimated_rate = exp(slope). Throws
/// std::invalid_argument when fewer than five points qualify.
RateReport estimate_linear_rate(const OptimizationHistory& history, double floor = 1e-12);

struct WolfeAudit {
  int steps_checked = 0;
  int sufficient_decrease_violations = 0;
  int curvature_violations = 0;
};

/// Re-evaluates the problem at every recorded u_k + alpha_k d_k and checks
/// both strong Wolfe inequalities against the recorded J_k and g_k^T d_k.
WolfeAudit audit_wolfe_steps(const Problem& problem, const OptimizationHistory& history,
                             const WolfeConfig& config);

/// True when the recorded objective values of all iterates are strictly
/// decreasing.
bool strictly_decreasing(const OptimizationHistory& history);

}  // namespace estim
