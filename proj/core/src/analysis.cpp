#include "acgm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace acgm {

double acgm_guarantee_floor(int k, const GuaranteeParams& params) {
  if (k < 1) {
    throw std::invalid_argument("the guarantee floor is defined for k >= 1");
  }
  if (!(params.l_u > 0.0)) {
    throw std::invalid_argument("the guarantee floor requires L_u > 0");
  }
  const double mu = params.mu();
  if (mu == 0.0) {
    const double kk = static_cast<double>(k) + 1.0;
    return kk * kk / (4.0 * params.l_u);
  }
  const double q_u = params.q_u();
  if (q_u >= 1.0) {
    throw std::invalid_argument(
        "guarantee undefined at q_u >= 1: strong convexity exceeds the curvature bound");
  }
  return std::pow(1.0 - std::sqrt(q_u), -(k - 1)) / (params.l_u - params.mu_f);
}

double RateConstants::ratio() const { return std::sqrt(b_amgs / b_fgm); }

RateConstants asymptotic_rate_constants(double q, double l_f) {
  if (!(q > 0.0) || q >= 1.0) {
    throw std::invalid_argument("rate constants are defined for q in (0, 1)");
  }
  if (!(l_f > 0.0)) {
    throw std::invalid_argument("rate constants require L_f > 0");
  }
  RateConstants rc;
  const double amgs_root = 1.0 + std::sqrt(q / (2.0 * (1.0 - q)));
  rc.b_amgs = amgs_root * amgs_root;
  const double amgs_den = std::sqrt(1.0 - q) + std::sqrt(q / 2.0);
  rc.c_amgs = 1.0 / (l_f * amgs_den * amgs_den);
  const double fgm_root = 1.0 / (1.0 - std::sqrt(q));
  rc.b_fgm = fgm_root * fgm_root;
  rc.c_fgm = 1.0 / (2.0 * l_f);
  return rc;
}

std::vector<bool> certify_convergence_bound(const Trace& t, const Vector& x_star,
                                            double f_star, const Vector& x0,
                                            const CertifyOptions& opt) {
  const double envelope = 0.5 * (x0 - x_star).squaredNorm();
  std::vector<bool> ok(t.records.size(), true);
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const TraceRecord& r = t.records[i];
    if (r.k < 1) continue;
    const double lhs = r.weight * (r.f_value - f_star);
    const double slack =
        opt.abs_tol + opt.rel_tol * r.weight * (std::abs(r.f_value) + std::abs(f_star));
    ok[i] = lhs <= envelope + slack;
  }
  return ok;
}

std::vector<double> gap_sequence(const Trace& t, const Vector& x_star, double f_star) {
  if (!t.has_states() || t.vertices.size() != t.records.size()) {
    throw std::invalid_argument(
        "gap sequence needs a trace recorded with vertex states");
  }
  std::vector<double> gaps(t.records.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const TraceRecord& r = t.records[i];
    // A_0 = 0 can meet F(x_0) = +infinity; that product is defined as zero.
    const double value_term = r.weight == 0.0 ? 0.0 : r.weight * (r.f_value - f_star);
    gaps[i] =
        value_term + 0.5 * t.curvatures[i] * (t.vertices[i] - x_star).squaredNorm();
  }
  return gaps;
}

LogLinearFit fit_log_gap(const Trace& t, double f_star, std::size_t from, std::size_t to) {
  if (to > t.records.size() || from >= to) {
    throw std::invalid_argument("fit range is empty or out of bounds");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  std::size_t n = 0;
  for (std::size_t i = from; i < to; ++i) {
    const TraceRecord& r = t.records[i];
    const double gap = r.f_value - f_star;
    const double y = std::log10(std::max(gap, 1e-300));
    const double x = static_cast<double>(r.wtu);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  const double den = n * sxx - sx * sx;
  LogLinearFit fit;
  if (den == 0.0) {
    return fit;  // degenerate abscissa: slope 0, r^2 0
  }
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ss_tot = syy - sy * sy / n;
  // Accumulator rounding leaves a sliver of spurious variance even on an
  // exactly stalled sequence; anything at that scale is a flat line that the
  // constant model explains perfectly.
  const double flat_floor = 1e-10 * std::max({1.0, syy, sy * sy / n});
  if (ss_tot <= flat_floor) {
    fit.slope = 0.0;
    fit.intercept = sy / static_cast<double>(n);
    fit.r_squared = 1.0;
    return fit;
  }
  double ss_res = 0.0;
  for (std::size_t i = from; i < to; ++i) {
    const TraceRecord& r = t.records[i];
    const double y = std::log10(std::max(r.f_value - f_star, 1e-300));
    const double pred = fit.intercept + fit.slope * static_cast<double>(r.wtu);
    ss_res += (y - pred) * (y - pred);
  }
  fit.r_squared = 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace acgm
