#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

double minimize_scalar(const ScalarFn& h, double lo, double hi, int points,
                       int refinements) {
  double best_x = lo;
  for (int round = 0; round <= refinements; ++round) {
    const double step = (hi - lo) / (points - 1);
    double best_v = h(lo);
    best_x = lo;
    for (int i = 1; i < points; ++i) {
      const double x = lo + i * step;
      const double v = h(x);
      if (v < best_v) {
        best_v = v;
        best_x = x;
      }
    }
    lo = best_x - 2.0 * step;
    hi = best_x + 2.0 * step;
  }
  return best_x;
}

Eigen::Vector2d minimize_2d(const std::function<double(double, double)>& h, double lo,
                            double hi, int points, int refinements) {
  double lo_a = lo, hi_a = hi, lo_b = lo, hi_b = hi;
  Eigen::Vector2d best(lo, lo);
  for (int round = 0; round <= refinements; ++round) {
    const double step_a = (hi_a - lo_a) / (points - 1);
    const double step_b = (hi_b - lo_b) / (points - 1);
    double best_v = h(lo_a, lo_b);
    best << lo_a, lo_b;
    for (int i = 0; i < points; ++i) {
      const double a = lo_a + i * step_a;
      for (int j = 0; j < points; ++j) {
        const double b = lo_b + j * step_b;
        const double v = h(a, b);
        if (v < best_v) {
          best_v = v;
          best << a, b;
        }
      }
    }
    lo_a = best[0] - 2.0 * step_a;
    hi_a = best[0] + 2.0 * step_a;
    lo_b = best[1] - 2.0 * step_b;
    hi_b = best[1] + 2.0 * step_b;
  }
  return best;
}

double bisect(const ScalarFn& h, double lo, double hi, int iters) {
  double f_lo = h(lo);
  double f_hi = h(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw std::invalid_argument("bisect: endpoints do not straddle a root");
  }
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = h(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_hi > 0.0)) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
      f_lo = f_mid;
    }
  }
  return 0.5 * (lo + hi);
}

double directional_derivative(const VectorFn& f, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& u, double step) {
  return (f(x + step * u) - f(x - step * u)) / (2.0 * step);
}

double max_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  return eig.eigenvalues().maxCoeff();
}

Eigen::MatrixXd densify(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                        int in_dim, int out_dim) {
  Eigen::MatrixXd m(out_dim, in_dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(in_dim);
  for (int j = 0; j < in_dim; ++j) {
    e[j] = 1.0;
    m.col(j) = apply(e);
    e[j] = 0.0;
  }
  return m;
}

}  // namespace oracle
