#pragma once

#include <optional>

#include "acgm/linesearch.hpp"
#include "acgm/metering.hpp"
#include "acgm/problem.hpp"
#include "acgm/trace.hpp"

namespace acgm {

// ---- scalar update rules (exposed for testing and for the weight-dominance
// ---- diagnostics; solvers call these internally) ------------------------

// Positive root a of (L + mu_psi) a^2 = (A + a)(gamma + mu a) given through
// the closed form
//   a = [gamma + A mu + sqrt((gamma + A mu)^2 + 4 (L - mu_f) A gamma)]
//       / (2 (L - mu_f)),
// where L is the trial estimate.  This is the weight growth that keeps the
// estimate-sequence certificate tight.  Requires l_trial > mu_f.
double acgm_weight_a(double gamma_k, double weight_k, double mu, double mu_f,
                     double l_trial);

// Positive root t of t^2 - t (1 - q_k t_k^2) - (l_trial_eff / l_prev_eff) t_k^2 = 0,
// the extrapolated form's momentum parameter update.  The effective estimates
// are L + mu_psi; q_k is the inverse condition number committed at step k.
double t_update(double t_k, double q_k, double l_prev_eff, double l_trial_eff);

// Extrapolation coefficient beta = [(t_k - 1) / t_next] *
// [(1 - q_next t_next) / (1 - q_next)].  Throws if q_next >= 1 (the smooth
// part would have to be stiffer than its own curvature bound) or t_next <= 0.
double extrapolation_beta(double t_k, double t_next, double q_next);

// Positive root a of L a^2 = 2 (A + a)(1 + mu A), AMGS's weight growth.
double amgs_weight_a(double weight_k, double mu, double l_trial);

// Positive root a of L_f a^2 = (A + a)(gamma + mu a), FGM's weight growth;
// identical to acgm_weight_a with a zero regularizer (mu_psi = 0).
double fgm_weight_a(double gamma_k, double weight_k, double mu, double l_f);

// Guarantee-weight surrogate for FISTA under a varying accepted estimate:
//   A_next = (sqrt(1/(4 L_next)) + sqrt(1/(4 L_next) + (L_k / L_next) A_k))^2.
// FISTA never forms this quantity itself; it is reconstructed so FISTA runs
// can be held to the same certificate as the native-weight methods.
double fista_weight_next(double weight_k, double l_k, double l_next);

// ---- per-method state ----------------------------------------------------

// Estimate-sequence form: keeps the estimate-function vertex explicitly.
struct AcgmEsState {
  Vector x;
  Vector vertex;           // estimate-function vertex v_k
  double weight = 0.0;     // accumulated guarantee weight A_k
  double curvature = 1.0;  // estimate-function curvature gamma_k = 1 + A_k mu
  double lip = 0.0;        // committed Lipschitz estimate L_k
  int k = 0;
  // Diagnostics from the last accepted step.
  Vector last_y;
  double last_a = 0.0;  // weight increment a of the last step
};

// Extrapolated form: vertex eliminated in favour of two consecutive iterates.
struct AcgmExState {
  Vector x;
  Vector x_prev;     // previous iterate; equals x at k = 0
  double t = 0.0;    // momentum parameter t_k
  double q = 0.0;    // committed inverse condition number mu / (L_k + mu_psi)
  double lip = 0.0;  // committed Lipschitz estimate L_k
  double weight = 0.0;  // reporting-only A_k; never feeds back into iterates
  int k = 0;
  Vector last_y;
};

struct FistaState {
  Vector x;
  Vector x_prev;
  double t = 0.0;
  double lip = 0.0;
  double weight = 0.0;  // surrogate guarantee weight, reporting-only
  int k = 0;
  Vector last_y;
};

struct AmgsState {
  Vector x;
  Vector vertex;
  double weight = 0.0;     // A_k
  double curvature = 1.0;  // estimate-function curvature 1 + mu A_k
  double lip = 0.0;
  int k = 0;
  Vector last_y;
};

struct FgmState {
  Vector x;
  Vector vertex;
  double weight = 1.0;     // raw A_k with A_0 = 1
  double curvature = 0.0;  // gamma_k
  double gamma0 = 0.0;     // kept to normalize reported weights to A_k / gamma_0
  int k = 0;
  Vector last_y;
};

// What one accepted iteration reports back to the run driver.
struct StepStats {
  double accepted_l = 0.0;
  int backtracks = 0;
  double weight = 0.0;     // reported guarantee weight after the step
  double move_norm = 0.0;  // ||x_new - y||, used by the optional stop rule
};

// ---- state constructors and single iterations -----------------------------
// Iterations mutate the state in place and may throw LineSearchError.

AcgmEsState acgm_es_init(const Vector& x0, double l0);
StepStats acgm_es_iteration(const CompositeProblem& p, const LineSearchParams& params,
                            AcgmEsState& s);

AcgmExState acgm_ex_init(const Vector& x0, double l0, const CompositeProblem& p);
StepStats acgm_ex_iteration(const CompositeProblem& p, const LineSearchParams& params,
                            AcgmExState& s);

FistaState fista_init(const Vector& x0, double l0);
// FISTA's search never lowers the estimate: r_d is forced to 1 regardless of
// params.r_d, because the momentum update is only valid under nondecreasing
// estimates.
StepStats fista_iteration(const CompositeProblem& p, const LineSearchParams& params,
                          FistaState& s);

// Fixed-estimate variant (FISTA-CP): the extrapolated iteration with the
// estimate frozen at l_f, no search.
StepStats fista_cp_iteration(const CompositeProblem& p, double l_f, AcgmExState& s);

AmgsState amgs_init(const Vector& x0, double l0);
StepStats amgs_iteration(const CompositeProblem& p, const LineSearchParams& params,
                         AmgsState& s);

// FGM handles smooth problems only (psi == 0); gamma0 must be >= mu and > 0.
// Passing gamma0 <= 0 selects the default max(mu, l_f).
FgmState fgm_init(const Vector& x0, double l_f, double mu, double gamma0);
StepStats fgm_iteration(const CompositeProblem& p, double l_f, FgmState& s);

// ---- run driver ------------------------------------------------------------

struct SolverConfig {
  LineSearchParams search;   // line-search methods; search.l0 seeds L_0
  std::optional<double> lf;  // fixed estimate for fista_cp / fgm; falls back to lf_hint
  double fgm_gamma0 = 0.0;   // <= 0 selects the default max(mu, L_f)
  std::optional<double> stop_tol;  // early stop once ||x_new - y|| <= stop_tol
  bool record_states = false;      // keep x / vertex / curvature history
};

struct Budget {
  enum class Kind { iterations, wtu };
  Kind kind = Kind::iterations;
  long long amount = 0;

  static Budget iterations(long long n) { return {Kind::iterations, n}; }
  static Budget wtu(long long n) { return {Kind::wtu, n}; }
};

// Runs the given method from p.x0 until the budget is exhausted.  Under a WTU
// budget an iteration whose cost would overshoot is discarded entirely, so
// every recorded row satisfies wtu <= budget.  A budget of zero yields a
// trace with only the start row.  Line-search failure aborts the run and
// marks the trace rather than throwing.
Trace run(MethodKind method, const CompositeProblem& p, const SolverConfig& config,
          const Budget& budget);

}  // namespace acgm
