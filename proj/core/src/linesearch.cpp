#include "acgm/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace acgm {

LineSearchError::LineSearchError(double last_l, int backtracks)
    : std::runtime_error("line search rejected " + std::to_string(backtracks) +
                         " trials up to estimate " + std::to_string(last_l) +
                         "; oracle or parameters are inconsistent"),
      last_l_(last_l) {}

bool descent_accepts(const CompositeProblem& p, const Vector& y,
                     const Vector& x_candidate, double l) {
  const double fy = p.f(y);
  const Vector d = x_candidate - y;
  const double model = fy + p.grad(y).dot(d) + 0.5 * l * d.squaredNorm();
  const double tol = 1e-12 * std::max(1.0, std::abs(fy));
  return p.f(x_candidate) <= model + tol;
}

bool quadratic_residual_accepts(const std::function<Vector(const Vector&)>& curvature_factor,
                                const Vector& y, const Vector& x_candidate, double l) {
  const Vector d = x_candidate - y;
  return curvature_factor(d).squaredNorm() <= l * d.squaredNorm();
}

SearchOutcome backtracking_search(const CompositeProblem& p, const LineSearchParams& params,
                                  double l_prev,
                                  const std::function<Trial(double)>& trial_builder) {
  if (!(params.l0 > 0.0) || !(l_prev > 0.0)) {
    throw std::invalid_argument("line search requires positive Lipschitz estimates");
  }
  if (!(params.r_u > 1.0) || !(params.r_d > 0.0) || params.r_d > 1.0) {
    throw std::invalid_argument("line search requires r_u > 1 and r_d in (0, 1]");
  }
  if (params.criterion == SearchCriterion::quadratic_residual && !p.curvature_factor) {
    throw std::invalid_argument(
        "quadratic_residual criterion needs a problem with a linear curvature factor");
  }

  // Exactly one decrease, then one increase per rejection, all as in-place
  // multiplications: accepted_l is bit-reproducible from (l_prev, counts).
  double l_hat = params.r_d * l_prev;
  int rejections = 0;
  while (true) {
    bool ok = false;
    Trial trial;
    try {
      trial = trial_builder(l_hat);
      ok = params.criterion == SearchCriterion::oracle_descent
               ? descent_accepts(p, trial.y, trial.x, l_hat)
               : quadratic_residual_accepts(p.curvature_factor, trial.y, trial.x, l_hat);
    } catch (const TrialInfeasible&) {
      // Counted (and later costed) like a rejected trial.
    }
    if (ok) {
      return SearchOutcome{l_hat, std::move(trial.x), rejections};
    }
    ++rejections;
    if (rejections > params.max_backtracks) {
      throw LineSearchError(l_hat, rejections);
    }
    l_hat *= params.r_u;
  }
}

double l_upper_bound(double l_f, double l0, double r_u, double r_d) {
  return std::max(r_u * l_f, r_d * l0);
}

}  // namespace acgm
