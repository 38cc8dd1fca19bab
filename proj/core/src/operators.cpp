#include "acgm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "acgm/rng.hpp"

namespace acgm {
namespace {

// Half-sample mirror: ... 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...  Symmetric, so
// each separable pass is a symmetric matrix.
inline int reflect(int i, int n) {
  if (i < 0) return -i - 1;
  if (i >= n) return 2 * n - 1 - i;
  return i;
}

std::vector<double> gaussian_taps(double sigma, int radius) {
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += taps[i + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

// One separable pass along rows (dim = 1) or columns (dim = 0), gather form.
Vector conv_pass(const Vector& in, int n1, int n2, const std::vector<double>& taps,
                 int radius, bool along_rows) {
  Vector out(n1 * n2);
  if (along_rows) {
    for (int i = 0; i < n1; ++i) {
      const int base = i * n2;
      for (int j = 0; j < n2; ++j) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
          acc += taps[t + radius] * in[base + reflect(j + t, n2)];
        }
        out[base + j] = acc;
      }
    }
  } else {
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
          acc += taps[t + radius] * in[reflect(i + t, n1) * n2 + j];
        }
        out[i * n2 + j] = acc;
      }
    }
  }
  return out;
}

}  // namespace

LinearOperator gaussian_blur_operator(int n1, int n2, double sigma, int radius) {
  if (n1 <= 0 || n2 <= 0 || !(sigma > 0.0) || radius < 0) {
    throw std::invalid_argument("blur operator needs a positive grid and kernel");
  }
  auto taps = std::make_shared<std::vector<double>>(gaussian_taps(sigma, radius));
  LinearOperator op;
  op.in_dim = n1 * n2;
  op.out_dim = n1 * n2;
  // Each mirrored pass is symmetric, so the whole operator is self-adjoint;
  // forward and adjoint differ only in pass order, which commutes here.
  auto apply = [n1, n2, taps, radius](const Vector& x) {
    Vector tmp = conv_pass(x, n1, n2, *taps, radius, /*along_rows=*/true);
    return conv_pass(tmp, n1, n2, *taps, radius, /*along_rows=*/false);
  };
  op.forward = apply;
  op.adjoint = apply;
  return op;
}

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// In-place single-stage analysis/synthesis helpers on the top-left
// m1 x m2 block of an n1 x n2 grid.
void haar_analysis_stage(Vector& w, int n2, int m1, int m2) {
  // Rows: [lo | hi] halves from adjacent pairs.
  std::vector<double> row(m2);
  for (int i = 0; i < m1; ++i) {
    const int base = i * n2;
    for (int j = 0; j < m2 / 2; ++j) {
      const double a = w[base + 2 * j];
      const double b = w[base + 2 * j + 1];
      row[j] = (a + b) * kInvSqrt2;
      row[m2 / 2 + j] = (a - b) * kInvSqrt2;
    }
    for (int j = 0; j < m2; ++j) w[base + j] = row[j];
  }
  // Columns.
  std::vector<double> col(m1);
  for (int j = 0; j < m2; ++j) {
    for (int i = 0; i < m1 / 2; ++i) {
      const double a = w[(2 * i) * n2 + j];
      const double b = w[(2 * i + 1) * n2 + j];
      col[i] = (a + b) * kInvSqrt2;
      col[m1 / 2 + i] = (a - b) * kInvSqrt2;
    }
    for (int i = 0; i < m1; ++i) w[i * n2 + j] = col[i];
  }
}

void haar_synthesis_stage(Vector& w, int n2, int m1, int m2) {
  std::vector<double> col(m1);
  for (int j = 0; j < m2; ++j) {
    for (int i = 0; i < m1 / 2; ++i) {
      const double lo = w[i * n2 + j];
      const double hi = w[(m1 / 2 + i) * n2 + j];
      col[2 * i] = (lo + hi) * kInvSqrt2;
      col[2 * i + 1] = (lo - hi) * kInvSqrt2;
    }
    for (int i = 0; i < m1; ++i) w[i * n2 + j] = col[i];
  }
  std::vector<double> row(m2);
  for (int i = 0; i < m1; ++i) {
    const int base = i * n2;
    for (int j = 0; j < m2 / 2; ++j) {
      const double lo = w[base + j];
      const double hi = w[base + m2 / 2 + j];
      row[2 * j] = (lo + hi) * kInvSqrt2;
      row[2 * j + 1] = (lo - hi) * kInvSqrt2;
    }
    for (int j = 0; j < m2; ++j) w[base + j] = row[j];
  }
}

}  // namespace

LinearOperator haar_operator(int n1, int n2, int stages) {
  if (stages < 1) {
    throw std::invalid_argument("haar operator needs at least one stage");
  }
  const int factor = 1 << stages;
  if (n1 <= 0 || n2 <= 0 || n1 % factor != 0 || n2 % factor != 0) {
    throw std::invalid_argument("grid dimensions must be divisible by 2^stages");
  }
  LinearOperator op;
  op.in_dim = n1 * n2;
  op.out_dim = n1 * n2;
  // Synthesis: coarsest block first, expanding back out.
  op.forward = [n1, n2, stages](const Vector& coeffs) {
    Vector w = coeffs;
    for (int s = stages - 1; s >= 0; --s) {
      haar_synthesis_stage(w, n2, n1 >> s, n2 >> s);
    }
    return w;
  };
  // Analysis: full grid first, shrinking the active block.  Orthonormality
  // makes this both the adjoint and the inverse of forward.
  op.adjoint = [n1, n2, stages](const Vector& img) {
    Vector w = img;
    for (int s = 0; s < stages; ++s) {
      haar_analysis_stage(w, n2, n1 >> s, n2 >> s);
    }
    return w;
  };
  return op;
}

LinearOperator discrete_gradient_operator(int n1, int n2) {
  if (n1 <= 0 || n2 <= 0) {
    throw std::invalid_argument("gradient operator needs a positive grid");
  }
  const int npix = n1 * n2;
  LinearOperator op;
  op.in_dim = npix;
  op.out_dim = 2 * npix;
  op.forward = [n1, n2, npix](const Vector& u) {
    Vector p = Vector::Zero(2 * npix);
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const int idx = i * n2 + j;
        if (i + 1 < n1) p[idx] = u[idx + n2] - u[idx];
        if (j + 1 < n2) p[npix + idx] = u[idx + 1] - u[idx];
      }
    }
    return p;
  };
  op.adjoint = [n1, n2, npix](const Vector& p) {
    Vector u = Vector::Zero(npix);
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const int idx = i * n2 + j;
        if (i + 1 < n1) {
          const double v = p[idx];
          u[idx + n2] += v;
          u[idx] -= v;
        }
        if (j + 1 < n2) {
          const double h = p[npix + idx];
          u[idx + 1] += h;
          u[idx] -= h;
        }
      }
    }
    return u;
  };
  return op;
}

LinearOperator compose(const LinearOperator& outer, const LinearOperator& inner) {
  if (outer.in_dim != inner.out_dim) {
    throw std::invalid_argument("operator shapes do not compose");
  }
  LinearOperator op;
  op.in_dim = inner.in_dim;
  op.out_dim = outer.out_dim;
  auto of = outer.forward;
  auto if_ = inner.forward;
  auto oa = outer.adjoint;
  auto ia = inner.adjoint;
  op.forward = [of, if_](const Vector& x) { return of(if_(x)); };
  op.adjoint = [oa, ia](const Vector& y) { return ia(oa(y)); };
  return op;
}

NormEstimate estimate_operator_norm_sq(const LinearOperator& op, double tol,
                                       int max_iters, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Vector v(op.in_dim);
  for (int i = 0; i < op.in_dim; ++i) v[i] = rng.next_gaussian();
  const double norm0 = v.norm();
  if (norm0 == 0.0) {
    throw std::logic_error("degenerate power-iteration start");
  }
  v /= norm0;

  NormEstimate est;
  double prev = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = op.adjoint(op.forward(v));
    const double rayleigh = v.dot(w);  // v has unit norm
    est.value = rayleigh;
    est.iterations = it;
    const double wn = w.norm();
    if (wn == 0.0) {
      est.value = 0.0;  // start landed in the null space: the estimate is a lower bound
      est.converged = true;
      return est;
    }
    if (it > 1 && std::abs(rayleigh - prev) <= tol * std::max(1.0, std::abs(rayleigh))) {
      est.converged = true;
      return est;
    }
    prev = rayleigh;
    v = w / wn;
  }
  return est;
}

}  // namespace acgm
