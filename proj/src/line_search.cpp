#include "estim/line_search.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "estim/errors.hpp"

namespace estim {

void WolfeConfig::validate() const {
  if (!(sigma > 0.0 && sigma <= 0.5)) {
    throw std::invalid_argument("sigma must lie in (0, 0.5]");
  }
  if (!(rho > 0.0 && rho <= sigma)) {
    throw std::invalid_argument("rho must lie in (0, sigma]");
  }
  if (max_zoom < 1) {
    throw std::invalid_argument("max_zoom must be >= 1");
  }
  if (!(alpha_max > 0.0) || !std::isfinite(alpha_max)) {
    throw std::invalid_argument("alpha_max must be positive and finite");
  }
}

bool satisfies_sufficient_decrease(double value0, double slope0, double alpha, double value,
                                   double rho) {
  return std::isfinite(value) && value - value0 <= rho * alpha * slope0;
}

bool satisfies_strong_curvature(double slope0, double slope, double sigma) {
  return std::abs(slope) <= -sigma * slope0;
}

namespace {

struct Trial {
  double alpha;
  double value;
  double slope;
};

class WolfeSearch {
 public:
  WolfeSearch(const Problem& problem, const Eigen::VectorXd& u, const Sample& at_u,
              const Eigen::VectorXd& d, const WolfeConfig& config)
      : problem_(problem), u_(u), d_(d), config_(config), value0_(at_u.value),
        slope0_(at_u.gradient.dot(d)) {}

  WolfeStep run(double initial_trial) {
    if (!(slope0_ < 0.0)) {
      throw std::invalid_argument("search direction is not a descent direction (g^T d >= 0)");
    }
    double alpha = initial_trial;
    if (!(alpha > 0.0) || !std::isfinite(alpha)) alpha = 1.0;
    alpha = std::min(alpha, config_.alpha_max);

    Trial prev{0.0, value0_, slope0_};
    for (int i = 0; i < config_.max_zoom; ++i) {
      const Trial cur = evaluate(alpha);
      if (!satisfies_sufficient_decrease(value0_, slope0_, alpha, cur.value, config_.rho) ||
          (i > 0 && cur.value >= prev.value)) {
        return zoom(prev, cur);
      }
      if (satisfies_strong_curvature(slope0_, cur.slope, config_.sigma)) return accept();
      if (cur.slope >= 0.0) return zoom(cur, prev);
      if (alpha >= config_.alpha_max) break;
      prev = cur;
      alpha = std::min(2.0 * alpha, config_.alpha_max);
    }
    throw LineSearchError("strong Wolfe search could not bracket an admissible step");
  }

 private:
  Trial evaluate(double alpha) {
    last_ = problem_.value_and_gradient(u_ + alpha * d_);
    last_alpha_ = alpha;
    ++evaluations_;
    const double slope = std::isfinite(last_.value) ? last_.gradient.dot(d_)
                                                    : std::numeric_limits<double>::quiet_NaN();
    return Trial{alpha, last_.value, slope};
  }

  WolfeStep accept() { return WolfeStep{last_alpha_, last_, evaluations_}; }

  // lo satisfies sufficient decrease and has the lowest value seen so far.
  WolfeStep zoom(Trial lo, Trial hi) {
    for (int j = 0; j < config_.max_zoom; ++j) {
      const double alpha = 0.5 * (lo.alpha + hi.alpha);
      const Trial cur = evaluate(alpha);
      if (!satisfies_sufficient_decrease(value0_, slope0_, alpha, cur.value, config_.rho) ||
          cur.value >= lo.value) {
        hi = cur;
        continue;
      }
      if (satisfies_strong_curvature(slope0_, cur.slope, config_.sigma)) return accept();
      if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = cur;
    }
    throw LineSearchError("strong Wolfe zoom exhausted max_zoom bisections");
  }

  const Problem& problem_;
  const Eigen::VectorXd& u_;
  const Eigen::VectorXd& d_;
  const WolfeConfig& config_;
  double value0_;
  double slope0_;
  Sample last_;
  double last_alpha_ = 0.0;
  int evaluations_ = 0;
};

}  // namespace

WolfeStep strong_wolfe_search(const Problem& problem, const Eigen::VectorXd& u,
                              const Sample& at_u, const Eigen::VectorXd& d,
                              const WolfeConfig& config, double initial_trial) {
  config.validate();
  if (!std::isfinite(at_u.value)) {
    throw std::invalid_argument("line search started from a non-finite objective value");
  }
  return WolfeSearch(problem, u, at_u, d, config).run(initial_trial);
}

WolfeStep strong_wolfe_search(const Problem& problem, const Eigen::VectorXd& u,
                              const Eigen::VectorXd& d, const WolfeConfig& config,
                              double initial_trial) {
  return strong_wolfe_search(problem, u, problem.value_and_gradient(u), d, config, initial_trial);
}

}  // namespace estim
