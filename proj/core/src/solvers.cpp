#include "acgm/solvers.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>

namespace acgm {

// ---- scalar update rules ---------------------------------------------------

double acgm_weight_a(double gamma_k, double weight_k, double mu, double mu_f,
                     double l_trial) {
  if (!(l_trial > mu_f)) {
    throw std::invalid_argument("weight update requires an estimate above mu_f");
  }
  const double b = gamma_k + weight_k * mu;
  const double disc = b * b + 4.0 * (l_trial - mu_f) * weight_k * gamma_k;
  return (b + std::sqrt(disc)) / (2.0 * (l_trial - mu_f));
}

double t_update(double t_k, double q_k, double l_prev_eff, double l_trial_eff) {
  if (!(l_prev_eff > 0.0) || !(l_trial_eff > 0.0)) {
    throw std::invalid_argument("t update requires positive effective estimates");
  }
  const double b = 1.0 - q_k * t_k * t_k;
  const double ratio = l_trial_eff / l_prev_eff;
  return 0.5 * (b + std::sqrt(b * b + 4.0 * ratio * t_k * t_k));
}

double extrapolation_beta(double t_k, double t_next, double q_next) {
  if (q_next >= 1.0) {
    throw std::invalid_argument(
        "extrapolation undefined at q >= 1: the strong convexity would exceed the "
        "curvature bound");
  }
  if (!(t_next > 0.0)) {
    throw std::invalid_argument("extrapolation requires t_next > 0");
  }
  return (t_k - 1.0) / t_next * (1.0 - q_next * t_next) / (1.0 - q_next);
}

double amgs_weight_a(double weight_k, double mu, double l_trial) {
  if (!(l_trial > 0.0)) {
    throw std::invalid_argument("weight update requires a positive estimate");
  }
  const double gamma = 1.0 + mu * weight_k;
  // L a^2 - 2 gamma a - 2 A gamma = 0.
  return (gamma + std::sqrt(gamma * gamma + 2.0 * l_trial * weight_k * gamma)) / l_trial;
}

double fgm_weight_a(double gamma_k, double weight_k, double mu, double l_f) {
  // Same quadratic as the composite rule with a zero regularizer, where the
  // full strong convexity lives in f.
  return acgm_weight_a(gamma_k, weight_k, mu, mu, l_f);
}

double fista_weight_next(double weight_k, double l_k, double l_next) {
  if (!(l_next > 0.0) || !(l_k > 0.0)) {
    throw std::invalid_argument("weight surrogate requires positive estimates");
  }
  const double quarter = 1.0 / (4.0 * l_next);
  const double root = std::sqrt(quarter) + std::sqrt(quarter + l_k / l_next * weight_k);
  return root * root;
}

// ---- estimate-sequence form -----------------------------------------------

AcgmEsState acgm_es_init(const Vector& x0, double l0) {
  AcgmEsState s;
  s.x = x0;
  s.vertex = x0;
  s.weight = 0.0;
  s.curvature = 1.0;
  s.lip = l0;
  s.k = 0;
  return s;
}

StepStats acgm_es_iteration(const CompositeProblem& p, const LineSearchParams& params,
                            AcgmEsState& s) {
  const double mu = p.mu();
  double trial_a = 0.0;
  double trial_weight = 0.0;
  double trial_curvature = 0.0;
  Vector trial_y;

  auto build = [&](double l_hat) -> Trial {
    if (l_hat <= p.mu_f) throw TrialInfeasible{};
    trial_a = acgm_weight_a(s.curvature, s.weight, mu, p.mu_f, l_hat);
    trial_weight = s.weight + trial_a;
    trial_curvature = s.curvature + trial_a * mu;
    if (s.weight == 0.0) {
      trial_y = s.vertex;  // exact limit of the combination below at A = 0
    } else {
      const double wx = s.weight * trial_curvature;
      const double wv = trial_a * s.curvature;
      trial_y = (wx * s.x + wv * s.vertex) / (wx + wv);
    }
    return Trial{trial_y, prox_grad_step(p, trial_y, l_hat)};
  };

  SearchOutcome out = backtracking_search(p, params, s.lip, build);
  const double l_new = out.accepted_l;

  Vector vertex_new = (s.curvature * s.vertex +
                       trial_a * (l_new + p.mu_psi) * out.accepted_point -
                       trial_a * (l_new - p.mu_f) * trial_y) /
                      trial_curvature;

  StepStats st;
  st.accepted_l = l_new;
  st.backtracks = out.backtrack_count;
  st.weight = trial_weight;
  st.move_norm = (out.accepted_point - trial_y).norm();

  s.last_y = std::move(trial_y);
  s.last_a = trial_a;
  s.x = std::move(out.accepted_point);
  s.vertex = std::move(vertex_new);
  s.weight = trial_weight;
  s.curvature = trial_curvature;
  s.lip = l_new;
  s.k += 1;
  return st;
}

// ---- extrapolated form ------------------------------------------------------

AcgmExState acgm_ex_init(const Vector& x0, double l0, const CompositeProblem& p) {
  AcgmExState s;
  s.x = x0;
  s.x_prev = x0;
  s.t = 0.0;
  s.q = p.mu() / (l0 + p.mu_psi);
  s.lip = l0;
  s.weight = 0.0;
  s.k = 0;
  return s;
}

namespace {

// Shared core of the searching and fixed-estimate variants: builds the trial
// for one estimate and commits it into the state.
struct ExTrialScratch {
  double t = 0.0;
  double q = 0.0;
  Vector y;
};

Trial ex_build_trial(const CompositeProblem& p, const AcgmExState& s, double l_hat,
                     ExTrialScratch& scratch) {
  if (l_hat <= p.mu_f) throw TrialInfeasible{};
  const double mu = p.mu();
  scratch.q = mu / (l_hat + p.mu_psi);
  scratch.t = t_update(s.t, s.q, s.lip + p.mu_psi, l_hat + p.mu_psi);
  const double beta = extrapolation_beta(s.t, scratch.t, scratch.q);
  scratch.y = s.x + beta * (s.x - s.x_prev);
  return Trial{scratch.y, prox_grad_step(p, scratch.y, l_hat)};
}

// Reporting weight: A_1 = 1/(L_1 - mu_f) in closed form, then the stable
// recursion A_{k+1} = A_k * t / (t - 1).  t > 1 for every k >= 1 whenever the
// estimate stays above mu_f, so the recursion cannot degenerate; the closed
// form t^2 / ((L + mu_psi)(1 - q t^2)) cancels catastrophically once q t^2
// approaches 1 and is avoided.
double ex_weight_next(const AcgmExState& s, const CompositeProblem& p, double t_next,
                      double l_new) {
  if (s.k == 0) {
    return 1.0 / (l_new - p.mu_f);
  }
  return s.weight * t_next / (t_next - 1.0);
}

StepStats ex_commit(const CompositeProblem& p, AcgmExState& s, double l_new,
                    int backtracks, ExTrialScratch&& scratch, Vector&& x_new) {
  StepStats st;
  st.accepted_l = l_new;
  st.backtracks = backtracks;
  st.weight = ex_weight_next(s, p, scratch.t, l_new);
  st.move_norm = (x_new - scratch.y).norm();

  s.x_prev = std::move(s.x);
  s.x = std::move(x_new);
  s.t = scratch.t;
  s.q = scratch.q;
  s.lip = l_new;
  s.weight = st.weight;
  s.k += 1;
  s.last_y = std::move(scratch.y);
  return st;
}

}  // namespace

StepStats acgm_ex_iteration(const CompositeProblem& p, const LineSearchParams& params,
                            AcgmExState& s) {
  ExTrialScratch scratch;
  auto build = [&](double l_hat) -> Trial { return ex_build_trial(p, s, l_hat, scratch); };
  SearchOutcome out = backtracking_search(p, params, s.lip, build);
  return ex_commit(p, s, out.accepted_l, out.backtrack_count, std::move(scratch),
                   std::move(out.accepted_point));
}

StepStats fista_cp_iteration(const CompositeProblem& p, double l_f, AcgmExState& s) {
  if (!(l_f > 0.0) || l_f <= p.mu_f) {
    throw std::invalid_argument("fixed-estimate iteration requires L_f > mu_f and > 0");
  }
  ExTrialScratch scratch;
  Trial trial = ex_build_trial(p, s, l_f, scratch);
  return ex_commit(p, s, l_f, 0, std::move(scratch), std::move(trial.x));
}

// ---- FISTA -------------------------------------------------------------------

FistaState fista_init(const Vector& x0, double l0) {
  FistaState s;
  s.x = x0;
  s.x_prev = x0;
  s.t = 0.0;
  s.lip = l0;
  s.weight = 0.0;
  s.k = 0;
  return s;
}

StepStats fista_iteration(const CompositeProblem& p, const LineSearchParams& params,
                          FistaState& s) {
  double trial_t = 0.0;
  Vector trial_y;
  auto build = [&](double l_hat) -> Trial {
    // The momentum update ignores the estimate entirely, which is what makes
    // the shared-gradient cost model valid.
    trial_t = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * s.t * s.t));
    const double beta = (s.t - 1.0) / trial_t;
    trial_y = s.x + beta * (s.x - s.x_prev);
    return Trial{trial_y, prox_grad_step(p, trial_y, l_hat)};
  };

  LineSearchParams fista_params = params;
  fista_params.r_d = 1.0;  // estimates may only grow
  SearchOutcome out = backtracking_search(p, fista_params, s.lip, build);

  StepStats st;
  st.accepted_l = out.accepted_l;
  st.backtracks = out.backtrack_count;
  st.weight = fista_weight_next(s.weight, s.lip, out.accepted_l);
  st.move_norm = (out.accepted_point - trial_y).norm();

  s.x_prev = std::move(s.x);
  s.x = std::move(out.accepted_point);
  s.t = trial_t;
  s.lip = out.accepted_l;
  s.weight = st.weight;
  s.k += 1;
  s.last_y = std::move(trial_y);
  return st;
}

// ---- AMGS ---------------------------------------------------------------------

AmgsState amgs_init(const Vector& x0, double l0) {
  AmgsState s;
  s.x = x0;
  s.vertex = x0;
  s.weight = 0.0;
  s.curvature = 1.0;
  s.lip = l0;
  s.k = 0;
  return s;
}

StepStats amgs_iteration(const CompositeProblem& p, const LineSearchParams& params,
                         AmgsState& s) {
  const double mu = p.mu();
  double trial_a = 0.0;
  Vector trial_y;
  auto build = [&](double l_hat) -> Trial {
    trial_a = amgs_weight_a(s.weight, mu, l_hat);
    trial_y = (s.weight * s.x + trial_a * s.vertex) / (s.weight + trial_a);
    return Trial{trial_y, prox_grad_step(p, trial_y, l_hat)};
  };

  SearchOutcome out = backtracking_search(p, params, s.lip, build);

  // Lower-bound vertex update: fold the tangent bound of f at the new
  // iterate (with its strong-convexity term) into the quadratic part of the
  // estimate function, then take one prox step to absorb the regularizer.
  // This is the second gradient evaluation of the iteration.
  const Vector grad_new = p.grad(out.accepted_point);
  const double quad_curvature = s.curvature + trial_a * p.mu_f;
  Vector center = (s.curvature * s.vertex + trial_a * p.mu_f * out.accepted_point -
                   trial_a * grad_new) /
                  quad_curvature;
  Vector vertex_new =
      p.prox ? p.prox(center, trial_a / quad_curvature) : std::move(center);

  StepStats st;
  st.accepted_l = out.accepted_l;
  st.backtracks = out.backtrack_count;
  st.weight = s.weight + trial_a;
  st.move_norm = (out.accepted_point - trial_y).norm();

  s.x = std::move(out.accepted_point);
  s.vertex = std::move(vertex_new);
  s.weight += trial_a;
  s.curvature = quad_curvature + trial_a * p.mu_psi;
  s.lip = out.accepted_l;
  s.k += 1;
  s.last_y = std::move(trial_y);
  return st;
}

// ---- FGM ------------------------------------------------------------------------

FgmState fgm_init(const Vector& x0, double l_f, double mu, double gamma0) {
  if (!(l_f > 0.0)) {
    throw std::invalid_argument("fgm requires L_f > 0");
  }
  if (l_f <= mu) {
    throw std::invalid_argument(
        "fgm requires L_f > mu (the perfectly conditioned case has no weight growth)");
  }
  if (gamma0 <= 0.0) {
    gamma0 = std::max(mu, l_f);
  }
  if (gamma0 < mu) {
    throw std::invalid_argument("fgm requires gamma0 >= mu");
  }
  FgmState s;
  s.x = x0;
  s.vertex = x0;
  s.weight = 1.0;
  s.curvature = gamma0;
  s.gamma0 = gamma0;
  s.k = 0;
  return s;
}

StepStats fgm_iteration(const CompositeProblem& p, double l_f, FgmState& s) {
  if (!p.psi_is_zero) {
    throw std::invalid_argument("fgm handles smooth problems only (psi == 0)");
  }
  const double mu = p.mu_f;
  const double a = fgm_weight_a(s.curvature, s.weight, mu, l_f);
  const double curvature_new = s.curvature + a * mu;

  const double wx = s.weight * curvature_new;
  const double wv = a * s.curvature;
  Vector y = (wx * s.x + wv * s.vertex) / (wx + wv);
  Vector grad_y = p.grad(y);

  Vector x_new = y - grad_y / l_f;
  Vector vertex_new = (s.curvature * s.vertex + a * mu * y - a * grad_y) / curvature_new;

  StepStats st;
  st.accepted_l = l_f;
  st.backtracks = 0;
  st.weight = (s.weight + a) / s.gamma0;  // normalized reporting weight
  st.move_norm = (x_new - y).norm();

  s.x = std::move(x_new);
  s.vertex = std::move(vertex_new);
  s.weight += a;
  s.curvature = curvature_new;
  s.k += 1;
  s.last_y = std::move(y);
  return st;
}

// ---- run driver --------------------------------------------------------------------

namespace {

struct Driver {
  std::function<StepStats()> step;
  std::function<const Vector&()> x;
  std::function<double()> lip;
  std::function<double()> initial_weight;
  // Null accessors for the forms that keep no explicit vertex.
  std::function<const Vector&()> vertex;
  std::function<double()> curvature;
};

double fixed_estimate(const CompositeProblem& p, const SolverConfig& cfg,
                      const char* method) {
  if (cfg.lf) return *cfg.lf;
  if (p.lf_hint) return *p.lf_hint;
  throw std::invalid_argument(std::string(method) +
                              " needs a Lipschitz constant: set config.lf or the "
                              "problem's lf_hint");
}

}  // namespace

Trace run(MethodKind method, const CompositeProblem& p, const SolverConfig& config,
          const Budget& budget) {
  if (p.x0.size() == 0) {
    throw std::invalid_argument("problem has no start point");
  }
  if (budget.amount < 0) {
    throw std::invalid_argument("budget must be nonnegative");
  }

  const LineSearchParams& ls = config.search;
  Driver d;
  // Each branch owns its state via shared_ptr captured in the closures.
  switch (method) {
    case MethodKind::acgm_es: {
      auto s = std::make_shared<AcgmEsState>(acgm_es_init(p.x0, ls.l0));
      d.step = [&p, &ls, s] { return acgm_es_iteration(p, ls, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [s] { return s->lip; };
      d.initial_weight = [] { return 0.0; };
      d.vertex = [s]() -> const Vector& { return s->vertex; };
      d.curvature = [s] { return s->curvature; };
      break;
    }
    case MethodKind::acgm_ex: {
      auto s = std::make_shared<AcgmExState>(acgm_ex_init(p.x0, ls.l0, p));
      d.step = [&p, &ls, s] { return acgm_ex_iteration(p, ls, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [s] { return s->lip; };
      d.initial_weight = [] { return 0.0; };
      break;
    }
    case MethodKind::fista: {
      auto s = std::make_shared<FistaState>(fista_init(p.x0, ls.l0));
      d.step = [&p, &ls, s] { return fista_iteration(p, ls, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [s] { return s->lip; };
      d.initial_weight = [] { return 0.0; };
      break;
    }
    case MethodKind::fista_cp: {
      const double lf = fixed_estimate(p, config, "fista_cp");
      auto s = std::make_shared<AcgmExState>(acgm_ex_init(p.x0, lf, p));
      d.step = [&p, lf, s] { return fista_cp_iteration(p, lf, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [s] { return s->lip; };
      d.initial_weight = [] { return 0.0; };
      break;
    }
    case MethodKind::amgs: {
      auto s = std::make_shared<AmgsState>(amgs_init(p.x0, ls.l0));
      d.step = [&p, &ls, s] { return amgs_iteration(p, ls, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [s] { return s->lip; };
      d.initial_weight = [] { return 0.0; };
      d.vertex = [s]() -> const Vector& { return s->vertex; };
      d.curvature = [s] { return s->curvature; };
      break;
    }
    case MethodKind::fgm: {
      if (!p.psi_is_zero) {
        throw std::invalid_argument("fgm handles smooth problems only (psi == 0)");
      }
      const double lf = fixed_estimate(p, config, "fgm");
      auto s = std::make_shared<FgmState>(fgm_init(p.x0, lf, p.mu_f, config.fgm_gamma0));
      d.step = [&p, lf, s] { return fgm_iteration(p, lf, *s); };
      d.x = [s]() -> const Vector& { return s->x; };
      d.lip = [lf] { return lf; };
      d.initial_weight = [s] { return s->weight / s->gamma0; };
      d.vertex = [s]() -> const Vector& { return s->vertex; };
      d.curvature = [s] { return s->curvature; };
      break;
    }
    default:
      throw std::invalid_argument("unknown method kind");
  }

  Trace trace;
  trace.method = method;

  auto record = [&](int k, long long wtu, double weight, int backtracks) {
    trace.records.push_back(TraceRecord{k, wtu, eval_F(p, d.x()), d.lip(), weight,
                                        backtracks});
    if (config.record_states) {
      trace.xs.push_back(d.x());
      if (d.vertex) {
        trace.vertices.push_back(d.vertex());
        trace.curvatures.push_back(d.curvature());
      }
    }
  };

  record(0, 0, d.initial_weight(), 0);

  long long spent = 0;
  int k = 0;
  while (true) {
    if (budget.kind == Budget::Kind::iterations && k >= budget.amount) break;

    StepStats st;
    try {
      st = d.step();
    } catch (const LineSearchError& e) {
      trace.aborted = true;
      trace.abort_reason = e.what();
      break;
    }
    const long long cost = wtu_of_run(method, 1, st.backtracks);
    if (budget.kind == Budget::Kind::wtu && spent + cost > budget.amount) {
      // The step ran but does not fit the budget: discard it so every
      // recorded row is within budget.
      break;
    }
    spent += cost;
    k += 1;
    record(k, spent, st.weight, st.backtracks);

    if (config.stop_tol && st.move_norm <= *config.stop_tol) break;
  }
  return trace;
}

}  // namespace acgm
