#include "estim/optimizers.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "estim/errors.hpp"

namespace estim {

std::string_view to_string(TerminalStatus status) {
  switch (status) {
    case TerminalStatus::Converged: return "Converged";
    case TerminalStatus::MaxIterations: return "MaxIterations";
    case TerminalStatus::LineSearchFailure: return "LineSearchFailure";
    case TerminalStatus::Diverged: return "Diverged";
  }
  return "Unknown";
}

int OptimizationHistory::steps() const {
  return static_cast<int>(
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.has_step(); }));
}

void OptimizerConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(lipschitz_xi > 0.0)) throw std::invalid_argument("xi must be positive");
  if (!(initial_step > 0.0)) throw std::invalid_argument("initial_step must be positive");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
}

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(OptimizationHistory& history) : history_(history), start_(Clock::now()) {}

  IterationRecord& add(int k, const Eigen::VectorXd& u, const Sample& s) {
    IterationRecord rec;
    rec.k = k;
    rec.value = s.value;
    rec.grad_norm = s.gradient.norm();
    rec.params = u;
    rec.gradient = s.gradient;
    rec.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
    history_.records.push_back(std::move(rec));
    return history_.records.back();
  }

 private:
  OptimizationHistory& history_;
  Clock::time_point start_;
};

bool finite_sample(const Sample& s) {
  return std::isfinite(s.value) && s.gradient.allFinite();
}

OptimizationResult finish(Eigen::VectorXd u, OptimizationHistory history, TerminalStatus status,
                          std::string message = {}) {
  history.status = status;
  history.message = std::move(message);
  return OptimizationResult{std::move(u), std::move(history)};
}

}  // namespace

OptimizationResult steepest_descent_fixed(const Problem& problem, const Eigen::VectorXd& u0,
                                          const OptimizerConfig& config) {
  config.validate();
  OptimizationHistory history;
  Recorder recorder(history);
  const double step = 1.0 / (2.0 * config.lipschitz_xi);

  Eigen::VectorXd u = u0;
  Sample s = problem.value_and_gradient(u);
  for (int k = 0;; ++k) {
    IterationRecord& rec = recorder.add(k, u, s);
    if (!finite_sample(s)) {
      return finish(u, std::move(history), TerminalStatus::Diverged, "non-finite objective");
    }
    if (s.gradient.squaredNorm() < config.tolerance) {
      return finish(u, std::move(history), TerminalStatus::Converged);
    }
    if (k >= config.max_iterations) {
      return finish(u, std::move(history), TerminalStatus::MaxIterations);
    }
    rec.direction = -s.gradient;
    rec.slope = -s.gradient.squaredNorm();
    rec.step = step;
    u = u - step * s.gradient;
    s = problem.value_and_gradient(u);
  }
}

OptimizationResult backtracking_descent(const Problem& problem, const Eigen::VectorXd& u0,
                                        const OptimizerConfig& config) {
  config.validate();
  OptimizationHistory history;
  Recorder recorder(history);
  const double reset_step = config.initial_step;
  const double min_step = 1e-16 * reset_step;

  Eigen::VectorXd u = u0;
  Sample s = problem.value_and_gradient(u);
  for (int k = 0;; ++k) {
    IterationRecord& rec = recorder.add(k, u, s);
    if (!finite_sample(s)) {
      return finish(u, std::move(history), TerminalStatus::Diverged, "non-finite objective");
    }
    if (s.gradient.squaredNorm() < config.tolerance) {
      return finish(u, std::move(history), TerminalStatus::Converged);
    }
    if (k >= config.max_iterations) {
      return finish(u, std::move(history), TerminalStatus::MaxIterations);
    }

    double alpha = reset_step;
    int halvings = 0;
    Eigen::VectorXd trial = u - alpha * s.gradient;
    while (!(problem.value(trial) < s.value)) {
      alpha *= 0.5;
      ++halvings;
      if (alpha < min_step) {
        rec.note = "no decrease above the minimum step";
        return finish(u, std::move(history), TerminalStatus::LineSearchFailure,
                      "backtracking step underflowed without decrease");
      }
      trial = u - alpha * s.gradient;
    }
    rec.direction = -s.gradient;
    rec.slope = -s.gradient.squaredNorm();
    rec.step = alpha;
    rec.backtracks = halvings;

    Sample next = problem.value_and_gradient(trial);
    if (finite_sample(next) && !(next.value < s.value)) {
      // The gradient solve disagrees with the value-only solve; treat as stalled.
      rec.note = "accepted value not reproduced";
      return finish(u, std::move(history), TerminalStatus::LineSearchFailure,
                    "objective evaluation not reproducible");
    }
    u = std::move(trial);
    s = std::move(next);
  }
}

std::string_view to_string(BetaRule rule) {
  switch (rule) {
    case BetaRule::FletcherReeves: return "fr";
    case BetaRule::PolakRibiere: return "pr";
    case BetaRule::HestenesStiefel: return "hs";
    case BetaRule::DaiYuan: return "dy";
  }
  return "unknown";
}

BetaRule parse_beta_rule(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fr") return BetaRule::FletcherReeves;
  if (lower == "pr") return BetaRule::PolakRibiere;
  if (lower == "hs") return BetaRule::HestenesStiefel;
  if (lower == "dy") return BetaRule::DaiYuan;
  throw std::invalid_argument("unknown NCG variant '" + std::string(name) +
                              "'; valid variants: fr, pr, hs, dy");
}

BetaValue compute_beta(BetaRule rule, const Eigen::VectorXd& g_k, const Eigen::VectorXd& g_prev,
                       const Eigen::VectorXd& d_prev) {
  const Eigen::VectorXd dg = g_k - g_prev;
  double numerator = 0.0;
  double denominator = 0.0;
  switch (rule) {
    case BetaRule::FletcherReeves:
      numerator = g_k.squaredNorm();
      denominator = g_prev.squaredNorm();
      break;
    case BetaRule::PolakRibiere:
      numerator = g_k.dot(dg);
      denominator = g_prev.squaredNorm();
      break;
    case BetaRule::HestenesStiefel:
      numerator = g_k.dot(dg);
      denominator = d_prev.dot(dg);
      break;
    case BetaRule::DaiYuan:
      numerator = g_k.squaredNorm();
      denominator = d_prev.dot(dg);
      break;
  }
  if (denominator == 0.0 || !std::isfinite(numerator / denominator)) {
    return BetaValue{0.0, "degenerate denominator; beta set to 0"};
  }
  const double beta = numerator / denominator;
  if (beta < 0.0) {
    return BetaValue{0.0, "negative beta clamped to 0"};
  }
  return BetaValue{beta, {}};
}

OptimizationResult ncg_minimize(const Problem& problem, const Eigen::VectorXd& u0, BetaRule rule,
                                const WolfeConfig& wolfe, const OptimizerConfig& config) {
  config.validate();
  wolfe.validate();
  OptimizationHistory history;
  Recorder recorder(history);

  Eigen::VectorXd u = u0;
  Sample s = problem.value_and_gradient(u);
  Eigen::VectorXd d = -s.gradient;
  double beta = IterationRecord::kNone;
  std::string beta_note;
  double prev_step = 0.0;
  double prev_slope = 0.0;

  for (int k = 0;; ++k) {
    IterationRecord& rec = recorder.add(k, u, s);
    if (!finite_sample(s)) {
      return finish(u, std::move(history), TerminalStatus::Diverged, "non-finite objective");
    }
    if (s.gradient.squaredNorm() < config.tolerance) {
      return finish(u, std::move(history), TerminalStatus::Converged);
    }
    if (k >= config.max_iterations) {
      return finish(u, std::move(history), TerminalStatus::MaxIterations);
    }

    double slope = s.gradient.dot(d);
    if (!(slope < 0.0)) {
      d = -s.gradient;
      slope = -s.gradient.squaredNorm();
      beta = 0.0;
      beta_note = "non-descent direction; beta set to 0";
    }
    rec.direction = d;
    rec.slope = slope;
    rec.beta = beta;
    rec.note = beta_note;

    double trial = config.initial_step;
    if (k > 0) trial = prev_step * prev_slope / slope;

    WolfeStep step;
    try {
      step = strong_wolfe_search(problem, u, s, d, wolfe, trial);
    } catch (const LineSearchError& e) {
      return finish(u, std::move(history), TerminalStatus::LineSearchFailure, e.what());
    }
    rec.step = step.alpha;
    prev_step = step.alpha;
    prev_slope = slope;

    Eigen::VectorXd u_next = u + step.alpha * d;
    const BetaValue b = compute_beta(rule, step.at_step.gradient, s.gradient, d);
    beta = b.value;
    beta_note = b.note;
    d = -step.at_step.gradient + beta * d;
    u = std::move(u_next);
    s = std::move(step.at_step);
  }
}

}  // namespace estim
