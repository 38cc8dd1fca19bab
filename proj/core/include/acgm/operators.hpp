#pragma once

#include <cstdint>
#include <functional>

#include "acgm/types.hpp"

namespace acgm {

// Matrix-free linear map with its adjoint.  Images and coefficient grids are
// flattened row-major into Vectors; constructors take the grid shape.
struct LinearOperator {
  int in_dim = 0;
  int out_dim = 0;
  std::function<Vector(const Vector&)> forward;
  std::function<Vector(const Vector&)> adjoint;
};

// Separable 2-D Gaussian blur on an n1 x n2 grid: a (2 radius + 1)-tap kernel
// with weights proportional to exp(-i^2 / (2 sigma^2)), normalized to sum 1,
// applied along rows then columns with reflexive (half-sample mirror)
// boundaries.  The mirror makes each 1-D pass a symmetric matrix, so the
// operator norm is exactly 1 (the kernel sums to 1 and constants are fixed).
LinearOperator gaussian_blur_operator(int n1, int n2, double sigma = 4.0, int radius = 4);

// Orthonormal multi-stage 2-D Haar transform on an n1 x n2 grid.  forward is
// the synthesis map (coefficients -> image) and adjoint the analysis map;
// both are exact inverses of each other.  n1 and n2 must be divisible by
// 2^stages.
LinearOperator haar_operator(int n1, int n2, int stages = 3);

// Discrete gradient on an n1 x n2 grid: forward differences down rows and
// across columns with the last difference clamped to zero (replicated edge).
// Output is a planar field of per-pixel 2-vectors, vertical differences in
// the first n1*n2 entries and horizontal in the second.  ||D||^2 <= 8.
LinearOperator discrete_gradient_operator(int n1, int n2);

// forward = outer.forward(inner.forward(x)); adjoints compose in reverse.
LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner);

struct NormEstimate {
  double value = 0.0;    // last Rayleigh quotient of A*A
  bool converged = false;  // relative change fell below tol before max_iters
  int iterations = 0;
};

// Power iteration on A*A from a seeded gaussian start: estimates the largest
// squared singular value ||A||^2.  The value is usable even when the
// convergence flag is false (clustered spectra converge slowly in the flag's
// sense while the quotient is already accurate).
NormEstimate estimate_operator_norm_sq(const LinearOperator& op, double tol = 1e-10,
                                       int max_iters = 500,
                                       std::uint64_t seed = 0x6f7e4a21u);

}  // namespace acgm
