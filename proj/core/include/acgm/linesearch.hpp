#pragma once

#include <functional>
#include <stdexcept>

#include "acgm/problem.hpp"

namespace acgm {

enum class SearchCriterion {
  oracle_descent,      // f(x) <= upper model, evaluated through the oracles
  quadratic_residual,  // ||B(x - y)||^2 <= L ||x - y||^2, exact for quadratic f
};

struct LineSearchParams {
  double l0 = 1.0;   // initial Lipschitz estimate (must be > 0)
  double r_u = 2.0;  // increase rate per rejection (> 1)
  double r_d = 0.9;  // decrease rate per iteration ((0, 1]; 1 disables decrease)
  int max_backtracks = 60;  // safety cap on rejections within one search
  SearchCriterion criterion = SearchCriterion::oracle_descent;
};

struct SearchOutcome {
  double accepted_l = 0.0;
  Vector accepted_point;
  int backtrack_count = 0;
};

// Thrown when a search exhausts max_backtracks.  The descent test provably
// accepts once the estimate exceeds the true Lipschitz constant, so reaching
// this means a broken oracle or an absurd starting estimate.
class LineSearchError : public std::runtime_error {
 public:
  LineSearchError(double last_l, int backtracks);
  double last_l() const { return last_l_; }

 private:
  double last_l_;
};

// Descent test f(x) <= q(x) + tol with tol = 1e-12 * max(1, |f(y)|), where q
// is the parabolic upper model around y.  The raw comparison turns into noise
// once both sides agree to machine precision near a solution; the tolerance
// absorbs that.
bool descent_accepts(const CompositeProblem& p, const Vector& y,
                     const Vector& x_candidate, double l);

// Algebraic form of the same test for f(x) = (1/2)||B x - b||^2: accept iff
// ||B(x - y)||^2 <= L ||x - y||^2.  Free of the cancellation the oracle form
// suffers from, and exact for any quadratic smooth part.
bool quadratic_residual_accepts(const std::function<Vector(const Vector&)>& curvature_factor,
                                const Vector& y, const Vector& x_candidate, double l);

// One trial produced by a solver for a given Lipschitz estimate.
struct Trial {
  Vector y;  // auxiliary point chosen for this estimate
  Vector x;  // prox-grad candidate at (y, L)
};

// Builders throw this to reject an estimate they cannot form a trial for —
// an estimate at or below the declared strong convexity leaves the weight
// update without a positive root, and the descent test could never hold
// there anyway.  The search counts it like any other rejected trial.
struct TrialInfeasible {};

// Backtracking over the Lipschitz estimate: the first trial uses
// r_d * l_prev, and every rejection multiplies the estimate by r_u — exactly
// one multiplication by r_d followed by repeated in-place *= r_u, so callers
// can reproduce accepted_l bit for bit.  trial_builder must be a
// deterministic function of the estimate; the invocation with the accepted
// estimate is always the last one made, so builders may stash per-trial state
// by reference and read the accepted values after return.
SearchOutcome backtracking_search(const CompositeProblem& p, const LineSearchParams& params,
                                  double l_prev,
                                  const std::function<Trial(double)>& trial_builder);

// max(r_u * l_f, r_d * l0): an accepted estimate can never exceed this, for
// any iteration of any run with these parameters.
double l_upper_bound(double l_f, double l0, double r_u, double r_d);

}  // namespace acgm
