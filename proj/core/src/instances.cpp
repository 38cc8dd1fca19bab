#include "acgm/instances.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "acgm/operators.hpp"
#include "acgm/rng.hpp"

namespace acgm {

QuadraticL1 make_quadratic_l1(const Vector& d, const Vector& c, double lambda,
                              bool declare_strong_convexity) {
  const bool declare = declare_strong_convexity;
  if (d.size() != c.size() || d.size() == 0) {
    throw std::invalid_argument("curvatures and centers must have matching sizes");
  }
  if ((d.array() <= 0.0).any()) {
    throw std::invalid_argument("curvatures must be positive");
  }
  if (lambda < 0.0) {
    throw std::invalid_argument("lambda must be nonnegative");
  }

  auto dd = std::make_shared<Vector>(d);
  auto cc = std::make_shared<Vector>(c);

  QuadraticL1 inst;
  CompositeProblem& p = inst.problem;
  p.dim = static_cast<int>(d.size());
  p.f = [dd, cc](const Vector& x) {
    return 0.5 * (dd->array() * (x - *cc).array().square()).sum();
  };
  p.grad = [dd, cc](const Vector& x) -> Vector {
    return (dd->array() * (x - *cc).array()).matrix();
  };
  attach_regularizer(p, lambda == 0.0 ? ProxCatalogEntry::zero()
                                      : ProxCatalogEntry::l1(lambda));
  p.mu_f = declare ? d.minCoeff() : 0.0;
  p.lf_hint = d.maxCoeff();
  p.x0 = Vector::Zero(d.size());

  // Componentwise closed-form minimizer: soft threshold of c against
  // lambda / d_i.
  inst.x_star = Vector(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double shift = lambda / d[i];
    const double mag = std::abs(c[i]) - shift;
    inst.x_star[i] = mag > 0.0 ? (c[i] > 0.0 ? mag : -mag) : 0.0;
  }
  inst.f_star = eval_F(p, inst.x_star);
  return inst;
}

QuadraticL1 random_quadratic_l1(int n, std::uint64_t seed, bool declare_strong_convexity,
                                double lambda) {
  if (n <= 0) {
    throw std::invalid_argument("instance size must be positive");
  }
  SplitMix64 rng(seed);
  Vector d(n), c(n);
  for (int i = 0; i < n; ++i) d[i] = 0.2 + 1.8 * rng.next_uniform();
  for (int i = 0; i < n; ++i) c[i] = -2.0 + 4.0 * rng.next_uniform();
  if (lambda < 0.0) lambda = 0.05 + 0.2 * rng.next_uniform();
  return make_quadratic_l1(d, c, lambda, declare_strong_convexity);
}

CompositeProblem random_lasso(int rows, int cols, double lambda, std::uint64_t seed) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("design matrix must be nonempty");
  }
  SplitMix64 rng(seed);
  auto a = std::make_shared<Eigen::MatrixXd>(rows, cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(rows));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      (*a)(i, j) = scale * rng.next_gaussian();
    }
  }
  // Sparse ground truth: roughly one in ten entries at +-1.
  Vector x_true = Vector::Zero(cols);
  for (int j = 0; j < cols; ++j) {
    if (rng.next_uniform() < 0.1) x_true[j] = rng.next_uniform() < 0.5 ? -1.0 : 1.0;
  }
  auto b = std::make_shared<Vector>(*a * x_true);
  for (int i = 0; i < rows; ++i) (*b)[i] += 0.01 * rng.next_gaussian();

  CompositeProblem p;
  p.dim = cols;
  p.f = [a, b](const Vector& x) { return 0.5 * (*a * x - *b).squaredNorm(); };
  p.grad = [a, b](const Vector& x) -> Vector { return a->transpose() * (*a * x - *b); };
  p.curvature_factor = [a](const Vector& d) -> Vector { return *a * d; };
  attach_regularizer(p, lambda == 0.0 ? ProxCatalogEntry::zero()
                                      : ProxCatalogEntry::l1(lambda));
  // Exact extremal eigenvalues of A^T A; the smallest is the honest mu_f
  // (zero whenever the system is underdetermined).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a->transpose() * *a);
  p.lf_hint = eig.eigenvalues().maxCoeff();
  p.mu_f = std::max(0.0, eig.eigenvalues().minCoeff());
  if (p.mu_f < 1e-12 * *p.lf_hint) p.mu_f = 0.0;  // rounding fuzz is not convexity
  p.x0 = Vector::Zero(cols);
  return p;
}

CompositeProblem build_deblurring_problem(const ImageGray& b, double lambda) {
  if (b.rows % 8 != 0 || b.cols % 8 != 0) {
    throw std::invalid_argument("deblurring assumes dimensions divisible by 8");
  }
  auto blur = std::make_shared<LinearOperator>(gaussian_blur_operator(b.rows, b.cols));
  auto haar = std::make_shared<LinearOperator>(haar_operator(b.rows, b.cols, 3));
  auto bvec = std::make_shared<Vector>(b.pixels);

  CompositeProblem p;
  p.dim = b.rows * b.cols;
  // f(x) = ||R W x - b||^2 — the doubled quadratic, so L_f = 2 ||R W||^2.
  p.f = [blur, haar, bvec](const Vector& x) {
    return (blur->forward(haar->forward(x)) - *bvec).squaredNorm();
  };
  p.grad = [blur, haar, bvec](const Vector& x) -> Vector {
    Vector residual = blur->forward(haar->forward(x)) - *bvec;
    return 2.0 * haar->adjoint(blur->adjoint(residual));
  };
  attach_regularizer(p, ProxCatalogEntry::l1(lambda));

  LinearOperator chain = compose(*blur, *haar);
  const NormEstimate est = estimate_operator_norm_sq(chain, 1e-12, 500);
  p.lf_hint = 2.0 * est.value;
  p.x0 = haar->adjoint(*bvec);  // analysis coefficients of the observed image
  return p;
}

CompositeProblem build_huber_rof_dual_problem(const ImageGray& b, double lambda,
                                              double eps) {
  if (!(lambda > 0.0) || !(eps > 0.0)) {
    throw std::invalid_argument("huber-rof needs positive lambda and eps");
  }
  auto grad_op =
      std::make_shared<LinearOperator>(discrete_gradient_operator(b.rows, b.cols));
  auto bvec = std::make_shared<Vector>(b.pixels);

  CompositeProblem p;
  p.dim = 2 * b.rows * b.cols;
  p.f = [grad_op, bvec](const Vector& dual) {
    return 0.5 * (grad_op->adjoint(dual) - *bvec).squaredNorm();
  };
  p.grad = [grad_op, bvec](const Vector& dual) -> Vector {
    return grad_op->forward(grad_op->adjoint(dual) - *bvec);
  };
  p.curvature_factor = [grad_op](const Vector& d) -> Vector {
    return grad_op->adjoint(d);
  };
  attach_regularizer(p, ProxCatalogEntry::huber_rof_dual(lambda, eps));

  const NormEstimate est = estimate_operator_norm_sq(*grad_op, 1e-12, 500);
  p.lf_hint = est.value;  // ||D||^2, at most 8 on any grid
  p.x0 = grad_op->forward(*bvec);  // generally infeasible; F(x0) = +infinity is fine
  return p;
}

namespace {

// One seed fixes the whole degraded instance; the noise stream must not
// overlap the scene stream, hence the fixed offset.
constexpr std::uint64_t kNoiseSeedOffset = 0x5851f42d4c957f2dULL;

}  // namespace

CompositeProblem make_deblur_benchmark(int rows, int cols, std::uint64_t seed,
                                       double lambda) {
  const ImageGray scene = synth_test_image(rows, cols, seed);
  const LinearOperator blur = gaussian_blur_operator(rows, cols);
  ImageGray observed{rows, cols, blur.forward(scene.pixels)};
  observed = add_gaussian_noise(observed, 1e-3, seed + kNoiseSeedOffset);
  return build_deblurring_problem(observed, lambda);
}

CompositeProblem make_huber_rof_benchmark(int rows, int cols, std::uint64_t seed,
                                          double lambda, double eps) {
  const ImageGray scene = synth_test_image(rows, cols, seed);
  const ImageGray observed = add_gaussian_noise(scene, 0.1, seed + kNoiseSeedOffset);
  return build_huber_rof_dual_problem(observed, lambda, eps);
}

CompositeProblem constant_curvature_problem(int n, double curvature) {
  if (n <= 0 || !(curvature > 0.0)) {
    throw std::invalid_argument("constant-curvature instance needs n > 0, curvature > 0");
  }
  CompositeProblem p;
  p.dim = n;
  p.f = [curvature](const Vector& x) { return 0.5 * curvature * x.squaredNorm(); };
  p.grad = [curvature](const Vector& x) -> Vector { return curvature * x; };
  attach_regularizer(p, ProxCatalogEntry::zero());
  p.mu_f = curvature;
  p.lf_hint = curvature;
  p.x0 = Vector::Ones(n);
  return p;
}

}  // namespace acgm
