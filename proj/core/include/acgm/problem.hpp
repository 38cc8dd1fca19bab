#pragma once

#include <functional>
#include <optional>

#include "acgm/types.hpp"

namespace acgm {

// Black-box composite objective F = f + psi.  f is convex and smooth with a
// Lipschitz gradient, psi is convex and "simple" (its prox map is cheap) and
// may take the value +infinity outside its feasible set.  Infeasibility is
// represented by the IEEE +infinity sentinel; psi oracles never return NaN,
// and callers must not do arithmetic on psi values without checking
// std::isinf first.
struct CompositeProblem {
  int dim = 0;
  std::function<double(const Vector&)> f;
  std::function<Vector(const Vector&)> grad;
  std::function<double(const Vector&)> psi;          // may return +infinity
  std::function<Vector(const Vector&, double)> prox;  // (point, step tau)
  double mu_f = 0.0;   // declared strong-convexity modulus of f
  double mu_psi = 0.0;  // declared strong-convexity modulus of psi
  std::optional<double> lf_hint;  // gradient Lipschitz constant, when known
  bool psi_is_zero = false;  // lets smooth-only methods validate their input

  // Linear factor B of a quadratic smooth part f(x) = (1/2)||B x - b||^2 + c.
  // When present it enables the cancellation-free line-search test
  // ||B d||^2 <= L ||d||^2; null for generic problems.
  std::function<Vector(const Vector&)> curvature_factor;

  // Default start point used by the run driver.
  Vector x0;

  double mu() const { return mu_f + mu_psi; }
};

// F(x) = f(x) + psi(x).  Returns +infinity exactly when psi(x) does; throws
// std::domain_error if the smooth oracle itself produces a non-finite value.
double eval_F(const CompositeProblem& p, const Vector& x);

// Parabolic upper model of the smooth part around y:
//   q(x) = f(y) + <grad f(y), x - y> + (L/2) ||x - y||^2.
double upper_model_q(const CompositeProblem& p, const Vector& y, double l, const Vector& x);

// Proximal gradient step: prox_{psi/L}(y - (1/L) grad f(y)), i.e. the
// minimizer of the upper model plus psi.  Requires L > 0.
Vector prox_grad_step(const CompositeProblem& p, const Vector& y, double l);

// Composite gradient L * (y - prox_grad_step(p, y, L)); collapses to
// grad f(y) when psi == 0.
Vector composite_gradient(const CompositeProblem& p, const Vector& y, double l);

// ---- prox catalog -----------------------------------------------------

// Componentwise soft threshold sign(x_i) * max(|x_i| - threshold, 0);
// the prox of threshold * ||.||_1.
Vector prox_l1(const Vector& x, double threshold);

// Prox of the dual total-variation regularizer with a Huber smoothing term:
//   psi(p) = (eps / (2 lambda)) ||p||^2  if every per-pixel pair stays inside
//            the ball of radius sqrt(lambda), +infinity otherwise.
// Fields of per-pixel 2-vectors are stored planar: component 1 occupies the
// first half of the vector and component 2 the second half, so pixel i is the
// pair (p[i], p[i + size/2]).  The prox shrinks each pair by
// 1 / (1 + tau * eps / lambda) and then projects it onto the ball.
Vector prox_huber_rof_dual(const Vector& p, double tau, double lambda, double eps);

// Value of the regularizer above.  Feasibility uses the relative allowance
// ||pair||^2 <= lambda * (1 + 1e-12) so that points produced by the exact
// projection are never rejected over rounding.
double huber_rof_dual_value(const Vector& p, double lambda, double eps);

// Regularizer choices understood by the built-in problem constructors.
struct ProxCatalogEntry {
  enum class Kind { zero, l1, huber_rof_dual };
  Kind kind = Kind::zero;
  double lambda = 0.0;
  double eps = 0.0;

  static ProxCatalogEntry zero() { return {}; }
  static ProxCatalogEntry l1(double lambda) { return {Kind::l1, lambda, 0.0}; }
  static ProxCatalogEntry huber_rof_dual(double lambda, double eps) {
    return {Kind::huber_rof_dual, lambda, eps};
  }
};

// Wires psi, prox, mu_psi and psi_is_zero on p for the given catalog entry.
void attach_regularizer(CompositeProblem& p, const ProxCatalogEntry& entry);

}  // namespace acgm
