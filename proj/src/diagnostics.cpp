#include "estim/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace estim {

RateReport check_descent_bounds(const OptimizationHistory& history, double sigma, double slack) {
  RateReport report;
  report.sigma = sigma;
  const double lower = -1.0 / (1.0 - sigma);
  const double upper = (2.0 * sigma - 1.0) / (1.0 - sigma);
  const bool corollary = sigma < 0.5;
  const double factor = corollary ? (1.0 - sigma) / (1.0 - 2.0 * sigma) : 0.0;

  for (const auto& rec : history.records) {
    if (!std::isfinite(rec.slope) || !(rec.grad_norm > 0.0)) continue;
    ++report.band_checked;
    const double g2 = rec.grad_norm * rec.grad_norm;
    const double ratio = rec.slope / g2;
    if (ratio < lower - slack * std::abs(lower) || ratio > upper + slack * std::abs(upper)) {
      ++report.albaali_violations;
    }
    if (corollary && g2 > factor * std::abs(rec.slope) * (1.0 + slack)) {
      ++report.corollary_violations;
    }
  }
  return report;
}

RateReport check_decay_lemma(const OptimizationHistory& history, double sigma, double slack) {
  RateReport report;
  report.sigma = sigma;

  std::vector<std::pair<int, double>> slopes;
  double beta = 0.0;
  bool any_beta = false;
  for (const auto& rec : history.records) {
    if (std::isfinite(rec.slope)) slopes.emplace_back(rec.k, std::abs(rec.slope));
    if (std::isfinite(rec.beta)) {
      beta = any_beta ? std::max(beta, rec.beta) : rec.beta;
      any_beta = true;
    }
  }
  report.beta_max = any_beta ? beta : IterationRecord::kNone;
  const double q = beta * sigma;
  if (q > 1.0) {
    report.decay_lemma_skipped = true;
    report.note = "hypothesis unmet: beta * sigma > 1";
    return report;
  }
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    for (std::size_t j = i + 1; j < slopes.size(); ++j) {
      const int exponent = slopes[j].first - slopes[i].first - 1;
      const double bound = std::pow(q, exponent) * slopes[i].second;
      ++report.decay_pairs_checked;
      if (slopes[j].second > bound * (1.0 + slack)) ++report.decay_lemma_violations;
    }
  }
  return report;
}

RateReport estimate_linear_rate(const OptimizationHistory& history, double floor) {
  if (history.records.empty()) {
    throw std::invalid_argument("rate estimate needs at least 5 points above the floor");
  }
  const double final_value = history.records.back().value;
  std::vector<double> xs, ys;
  for (const auto& rec : history.records) {
    const double excess = rec.value - final_value;
    if (std::isfinite(excess) && excess > floor) {
      xs.push_back(rec.k);
      ys.push_back(std::log(excess));
    }
  }
  if (xs.size() < 5) {
    throw std::invalid_argument("rate estimate needs at least 5 points above the floor");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  RateReport report;
  report.estimated_rate = std::exp(slope);
  report.r_squared = syy > 0.0 ? std::min(1.0, (sxy * sxy) / (sxx * syy)) : 1.0;
  report.fitted_points = static_cast<int>(xs.size());
  return report;
}

WolfeAudit audit_wolfe_steps(const Problem& problem, const OptimizationHistory& history,
                             const WolfeConfig& config) {
  WolfeAudit audit;
  for (const auto& rec : history.records) {
    if (!rec.has_step() || rec.direction.size() == 0) continue;
    ++audit.steps_checked;
    const Sample next = problem.value_and_gradient(rec.params + rec.step * rec.direction);
    if (!satisfies_sufficient_decrease(rec.value, rec.slope, rec.step, next.value, config.rho)) {
      ++audit.sufficient_decrease_violations;
    }
    if (!std::isfinite(next.value) ||
        !satisfies_strong_curvature(rec.slope, next.gradient.dot(rec.direction), config.sigma)) {
      ++audit.curvature_violations;
    }
  }
  return audit;
}

bool strictly_decreasing(const OptimizationHistory& history) {
  for (std::size_t i = 1; i < history.records.size(); ++i) {
    if (!(history.records[i].value < history.records[i - 1].value)) return false;
  }
  return true;
}

}  // namespace estim
