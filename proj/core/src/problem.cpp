#include "acgm/problem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace acgm {

double eval_F(const CompositeProblem& p, const Vector& x) {
  const double fv = p.f(x);
  if (!std::isfinite(fv)) {
    throw std::domain_error("smooth oracle returned a non-finite value");
  }
  const double pv = p.psi ? p.psi(x) : 0.0;
  if (std::isnan(pv)) {
    throw std::domain_error("regularizer oracle returned NaN");
  }
  return fv + pv;
}

double upper_model_q(const CompositeProblem& p, const Vector& y, double l, const Vector& x) {
  const Vector d = x - y;
  return p.f(y) + p.grad(y).dot(d) + 0.5 * l * d.squaredNorm();
}

Vector prox_grad_step(const CompositeProblem& p, const Vector& y, double l) {
  if (!(l > 0.0)) {
    throw std::invalid_argument("prox_grad_step requires a positive Lipschitz estimate");
  }
  const double tau = 1.0 / l;
  Vector forward = y - tau * p.grad(y);
  if (!p.prox) {
    return forward;  // zero regularizer
  }
  return p.prox(forward, tau);
}

Vector composite_gradient(const CompositeProblem& p, const Vector& y, double l) {
  return l * (y - prox_grad_step(p, y, l));
}

Vector prox_l1(const Vector& x, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("prox_l1 requires a nonnegative threshold");
  }
  Vector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]) - threshold;
    out[i] = mag > 0.0 ? (x[i] > 0.0 ? mag : -mag) : 0.0;
  }
  return out;
}

Vector prox_huber_rof_dual(const Vector& p, double tau, double lambda, double eps) {
  if (p.size() % 2 != 0) {
    throw std::invalid_argument("dual fields hold per-pixel pairs; size must be even");
  }
  const Eigen::Index npix = p.size() / 2;
  const double shrink = 1.0 / (1.0 + tau * eps / lambda);
  Vector out(p.size());
  for (Eigen::Index i = 0; i < npix; ++i) {
    double a = shrink * p[i];
    double b = shrink * p[i + npix];
    const double norm_sq = a * a + b * b;
    if (norm_sq > lambda) {
      const double scale = std::sqrt(lambda / norm_sq);
      a *= scale;
      b *= scale;
    }
    out[i] = a;
    out[i + npix] = b;
  }
  return out;
}

double huber_rof_dual_value(const Vector& p, double lambda, double eps) {
  if (p.size() % 2 != 0) {
    throw std::invalid_argument("dual fields hold per-pixel pairs; size must be even");
  }
  const Eigen::Index npix = p.size() / 2;
  const double radius_sq = lambda * (1.0 + 1e-12);
  double total_sq = 0.0;
  for (Eigen::Index i = 0; i < npix; ++i) {
    const double norm_sq = p[i] * p[i] + p[i + npix] * p[i + npix];
    if (norm_sq > radius_sq) {
      return std::numeric_limits<double>::infinity();
    }
    total_sq += norm_sq;
  }
  return eps / (2.0 * lambda) * total_sq;
}

void attach_regularizer(CompositeProblem& p, const ProxCatalogEntry& entry) {
  switch (entry.kind) {
    case ProxCatalogEntry::Kind::zero:
      p.psi = [](const Vector&) { return 0.0; };
      p.prox = [](const Vector& x, double) { return x; };
      p.mu_psi = 0.0;
      p.psi_is_zero = true;
      break;
    case ProxCatalogEntry::Kind::l1: {
      const double lambda = entry.lambda;
      p.psi = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
      p.prox = [lambda](const Vector& x, double tau) { return prox_l1(x, tau * lambda); };
      p.mu_psi = 0.0;
      p.psi_is_zero = false;
      break;
    }
    case ProxCatalogEntry::Kind::huber_rof_dual: {
      const double lambda = entry.lambda;
      const double eps = entry.eps;
      p.psi = [lambda, eps](const Vector& x) { return huber_rof_dual_value(x, lambda, eps); };
      p.prox = [lambda, eps](const Vector& x, double tau) {
        return prox_huber_rof_dual(x, tau, lambda, eps);
      };
      p.mu_psi = eps / lambda;
      p.psi_is_zero = false;
      break;
    }
  }
}

}  // namespace acgm
