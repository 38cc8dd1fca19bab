#pragma once

#include <cstdint>

#include "acgm/image.hpp"
#include "acgm/problem.hpp"

namespace acgm {

// Separable quadratic plus L1:
//   f(x) = (1/2) sum_i d_i (x_i - c_i)^2,  psi = lambda ||x||_1,  d_i > 0.
// The minimizer is componentwise soft thresholding of c against lambda / d_i,
// so the optimum is known in closed form; this is the reference instance for
// certifying guarantees.  declare_strong_convexity controls whether mu_f is
// advertised as min(d) or hidden as 0 (the function itself is unchanged).
struct QuadraticL1 {
  CompositeProblem problem;
  Vector x_star;
  double f_star = 0.0;
};
QuadraticL1 make_quadratic_l1(const Vector& d, const Vector& c, double lambda,
                              bool declare_strong_convexity = true);
// Seeded instance with d_i in [0.2, 2], c_i in [-2, 2].  lambda <= 0 selects
// a seeded value in [0.05, 0.25]; lambda == 0 exactly is the smooth instance
// (zero regularizer), usable with FGM.
QuadraticL1 random_quadratic_l1(int n, std::uint64_t seed, bool declare_strong_convexity,
                                double lambda = -1.0);

// Least squares plus L1 with a dense seeded gaussian design matrix:
//   f(x) = (1/2) ||A x - b||^2, A is rows x cols, b = A x_true + noise.
// lf_hint is the exact largest eigenvalue of A^T A (dense solve; keep cols
// modest).  mu is 0 whenever rows < cols.
CompositeProblem random_lasso(int rows, int cols, double lambda, std::uint64_t seed);

// Wavelet-synthesis deblurring on the observed image b:
//   f(x) = ||R W x - b||^2 (note: no 1/2),  psi = lambda ||x||_1,
// where R is the Gaussian blur and W the 3-stage orthonormal Haar synthesis;
// unknowns are wavelet coefficients.  lf_hint = 2 * ||R W||^2 estimated by
// power iteration (= 2 up to estimation error, since W is orthonormal and
// ||R|| = 1).  Start point: the Haar analysis coefficients of b.
CompositeProblem build_deblurring_problem(const ImageGray& b, double lambda);

// Dual form of Huber-smoothed total-variation denoising of the image b:
//   f(p) = (1/2) ||D^T p - b||^2 over per-pixel dual fields p,
//   psi(p) = (eps / (2 lambda)) ||p||^2 inside the per-pixel ball of radius
//            sqrt(lambda), +infinity outside,
// with D the discrete gradient, so mu_psi = eps / lambda and L_f = ||D||^2
// <= 8.  The curvature factor D^T is attached, enabling the exact
// quadratic-residual search criterion.  Start point: D b, which may be
// infeasible (F(x_0) = +infinity) — the first prox step restores
// feasibility.
CompositeProblem build_huber_rof_dual_problem(const ImageGray& b, double lambda = 0.1,
                                              double eps = 0.001);

// Full benchmark pipelines: synthesize a scene, degrade it, build the
// recovery problem.  The noise seed is derived from the scene seed so one
// seed fixes the whole instance.
CompositeProblem make_deblur_benchmark(int rows, int cols, std::uint64_t seed,
                                       double lambda = 2e-5);
CompositeProblem make_huber_rof_benchmark(int rows, int cols, std::uint64_t seed,
                                          double lambda = 0.1, double eps = 0.001);

// f(x) = (curvature / 2) ||x||^2 with a zero regularizer: every direction has
// the same curvature, so the descent test accepts exactly the estimates
// >= curvature.  Used by the cost-model fidelity checks.
CompositeProblem constant_curvature_problem(int n, double curvature);

}  // namespace acgm
