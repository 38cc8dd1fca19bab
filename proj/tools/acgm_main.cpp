// Command-line front end: run solvers on built-in problem families, emit CSV
// traces and guarantee curves, and drive the self-verification suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "acgm/analysis.hpp"
#include "acgm/instances.hpp"
#include "acgm/rng.hpp"
#include "acgm/solvers.hpp"

namespace {

using json = nlohmann::json;
using acgm::Budget;
using acgm::CompositeProblem;
using acgm::MethodKind;
using acgm::SolverConfig;
using acgm::Trace;
using acgm::Vector;

// ---- configuration ---------------------------------------------------------

// Everything optional: resolution order is flag > config file > default.
struct RawOptions {
  std::optional<std::string> problem;
  std::vector<std::string> solvers;
  std::optional<std::string> image;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;        // dimension for the synthetic vector problems
  std::optional<int> rows;     // lasso design rows
  std::optional<int> n1, n2;   // image grid
  std::optional<double> lambda;
  std::optional<double> eps;
  std::optional<double> l0;
  std::optional<double> r_u;
  std::optional<double> r_d;
  std::optional<double> lf;
  std::optional<double> fgm_gamma0;
  std::optional<double> stop_tol;
  std::optional<double> mu_f_override;
  std::optional<double> mu_psi_override;
  std::optional<std::string> criterion;
  std::optional<long long> budget_iters;
  std::optional<long long> budget_wtu;
  std::optional<bool> declare_mu;
  std::optional<std::string> output;
};

template <typename T>
void fill_from_json(const json& j, const char* key, std::optional<T>& slot) {
  if (!slot.has_value() && j.contains(key)) slot = j.at(key).get<T>();
}

void merge_config_file(RawOptions& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j = json::parse(in);
  fill_from_json(j, "problem", opt.problem);
  if (opt.solvers.empty() && j.contains("solvers")) {
    for (const auto& s : j.at("solvers")) opt.solvers.push_back(s.get<std::string>());
  }
  if (opt.solvers.empty() && j.contains("solver")) {
    opt.solvers.push_back(j.at("solver").get<std::string>());
  }
  fill_from_json(j, "image", opt.image);
  fill_from_json(j, "seed", opt.seed);
  fill_from_json(j, "n", opt.n);
  fill_from_json(j, "rows", opt.rows);
  fill_from_json(j, "n1", opt.n1);
  fill_from_json(j, "n2", opt.n2);
  fill_from_json(j, "lambda", opt.lambda);
  fill_from_json(j, "eps", opt.eps);
  fill_from_json(j, "L0", opt.l0);
  fill_from_json(j, "r_u", opt.r_u);
  fill_from_json(j, "r_d", opt.r_d);
  fill_from_json(j, "lf", opt.lf);
  fill_from_json(j, "fgm_gamma0", opt.fgm_gamma0);
  fill_from_json(j, "stop_tol", opt.stop_tol);
  fill_from_json(j, "mu_f", opt.mu_f_override);
  fill_from_json(j, "mu_psi", opt.mu_psi_override);
  fill_from_json(j, "criterion", opt.criterion);
  fill_from_json(j, "budget_iters", opt.budget_iters);
  fill_from_json(j, "budget_wtu", opt.budget_wtu);
  fill_from_json(j, "declare_mu", opt.declare_mu);
  fill_from_json(j, "output", opt.output);
}

// Known-solution metadata travels with the problem when available.
struct ProblemBundle {
  CompositeProblem problem;
  std::optional<Vector> x_star;
  std::optional<double> f_star;
  std::string name;
};

ProblemBundle build_problem(const RawOptions& opt) {
  const std::string kind = opt.problem.value_or("quadratic_l1_known");
  const std::uint64_t seed = opt.seed.value_or(1);
  ProblemBundle bundle;
  bundle.name = kind;
  if (kind == "quadratic_l1_known") {
    auto inst = acgm::random_quadratic_l1(opt.n.value_or(50), seed,
                                          opt.declare_mu.value_or(true),
                                          opt.lambda.value_or(-1.0));
    bundle.problem = inst.problem;
    bundle.x_star = inst.x_star;
    bundle.f_star = inst.f_star;
  } else if (kind == "lasso_synthetic") {
    bundle.problem = acgm::random_lasso(opt.rows.value_or(50), opt.n.value_or(100),
                                        opt.lambda.value_or(0.1), seed);
  } else if (kind == "deblur") {
    const double lambda = opt.lambda.value_or(2e-5);
    if (opt.image) {
      bundle.problem = acgm::build_deblurring_problem(acgm::pgm_read(*opt.image), lambda);
    } else {
      bundle.problem = acgm::make_deblur_benchmark(opt.n1.value_or(64),
                                                   opt.n2.value_or(64), seed, lambda);
    }
  } else if (kind == "huber_rof_dual") {
    const double lambda = opt.lambda.value_or(0.1);
    const double eps = opt.eps.value_or(0.001);
    if (opt.image) {
      bundle.problem =
          acgm::build_huber_rof_dual_problem(acgm::pgm_read(*opt.image), lambda, eps);
    } else {
      bundle.problem = acgm::make_huber_rof_benchmark(
          opt.n1.value_or(64), opt.n2.value_or(64), seed, lambda, eps);
    }
  } else {
    throw std::runtime_error("unknown problem: " + kind);
  }
  if (opt.mu_f_override) bundle.problem.mu_f = *opt.mu_f_override;
  if (opt.mu_psi_override) bundle.problem.mu_psi = *opt.mu_psi_override;
  return bundle;
}

SolverConfig build_solver_config(const RawOptions& opt, const CompositeProblem& p,
                                 MethodKind method) {
  SolverConfig cfg;
  const double fallback_l0 = p.lf_hint.value_or(1.0);
  cfg.search.l0 = opt.l0.value_or(fallback_l0);
  cfg.search.r_u = opt.r_u.value_or(2.0);
  cfg.search.r_d = opt.r_d.value_or(0.9);
  cfg.lf = opt.lf;
  if (opt.fgm_gamma0) cfg.fgm_gamma0 = *opt.fgm_gamma0;
  if (opt.stop_tol) cfg.stop_tol = *opt.stop_tol;
  const std::string crit = opt.criterion.value_or(
      p.curvature_factor && method != MethodKind::fista_cp && method != MethodKind::fgm
          ? "quadratic"
          : "descent");
  if (crit == "quadratic") {
    if (!p.curvature_factor) {
      throw std::runtime_error(
          "the quadratic criterion needs a problem with an exact curvature factor");
    }
    cfg.search.criterion = acgm::SearchCriterion::quadratic_residual;
  } else if (crit == "descent") {
    cfg.search.criterion = acgm::SearchCriterion::oracle_descent;
  } else {
    throw std::runtime_error("unknown search criterion: " + crit);
  }
  return cfg;
}

Budget build_budget(const RawOptions& opt) {
  if (opt.budget_iters && opt.budget_wtu) {
    throw std::runtime_error("give either an iteration budget or a cost budget, not both");
  }
  if (opt.budget_wtu) return Budget::wtu(*opt.budget_wtu);
  return Budget::iterations(opt.budget_iters.value_or(100));
}

// Relative outputs land in ACGM_OUTPUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv("ACGM_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0' || fs::path(path).is_absolute()) return path;
  fs::create_directories(dir);
  return (fs::path(dir) / path).string();
}

void write_csv_file(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  fn(out);
}

// ---- subcommands -----------------------------------------------------------

int cmd_run(const RawOptions& opt) {
  if (opt.solvers.size() != 1) {
    throw std::runtime_error("run needs exactly one --solver");
  }
  const MethodKind method = acgm::method_from_name(opt.solvers[0]);
  ProblemBundle bundle = build_problem(opt);
  const SolverConfig cfg = build_solver_config(opt, bundle.problem, method);
  const Budget budget = build_budget(opt);

  const Trace trace = acgm::run(method, bundle.problem, cfg, budget);
  const std::string out_path = resolve_output(
      opt.output.value_or(opt.solvers[0] + "_" + bundle.name + ".csv"));
  write_csv_file(out_path, [&](std::ostream& os) { acgm::write_trace_csv(os, trace); });

  const auto& last = trace.records.back();
  std::cout << bundle.name << " / " << opt.solvers[0] << ": " << trace.records.size()
            << " rows, final F = " << last.f_value << ", wtu = " << last.wtu
            << " -> " << out_path << "\n";
  if (trace.aborted) {
    std::cerr << "line search aborted: " << trace.abort_reason << "\n";
    return 3;
  }
  return 0;
}

int cmd_compare(const RawOptions& opt) {
  if (opt.solvers.empty()) {
    throw std::runtime_error("compare needs at least one --solver");
  }
  ProblemBundle bundle = build_problem(opt);
  const Budget budget = build_budget(opt);

  std::vector<std::pair<std::string, Trace>> runs;
  bool any_aborted = false;
  for (const std::string& name : opt.solvers) {
    const MethodKind method = acgm::method_from_name(name);
    const SolverConfig cfg = build_solver_config(opt, bundle.problem, method);
    runs.emplace_back(name, acgm::run(method, bundle.problem, cfg, budget));
    if (runs.back().second.aborted) {
      any_aborted = true;
      std::cerr << name << " aborted: " << runs.back().second.abort_reason << "\n";
    }
  }
  const std::string out_path =
      resolve_output(opt.output.value_or("compare_" + bundle.name + ".csv"));
  write_csv_file(out_path, [&](std::ostream& os) { acgm::write_compare_csv(os, runs); });
  std::cout << bundle.name << ": " << runs.size() << " solvers -> " << out_path << "\n";
  return any_aborted ? 3 : 0;
}

int cmd_bounds(double l_u, double mu_f, double mu_psi, int kmax, double r0,
               const std::string& output) {
  acgm::GuaranteeParams gp;
  gp.l_u = l_u;
  gp.mu_f = mu_f;
  gp.mu_psi = mu_psi;
  if (gp.mu() > 0.0 && gp.q_u() >= 1.0) {
    throw std::runtime_error("inverse condition number at or above 1: no valid floor");
  }
  const double radius_term = 0.5 * r0 * r0;
  const std::string out_path = resolve_output(output);
  write_csv_file(out_path, [&](std::ostream& os) {
    os << "k,floor_A,envelope_F_gap\n";
    char buf[128];
    for (int k = 1; k <= kmax; ++k) {
      const double floor = acgm::acgm_guarantee_floor(k, gp);
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g\n", k, floor,
                    radius_term / floor);
      os << buf;
    }
  });
  std::cout << (kmax < 1 ? 0 : kmax) << " bound rows -> " << out_path << "\n";
  return 0;
}

// ---- verify ----------------------------------------------------------------

struct VerifyReport {
  int checks = 0;
  int failed = 0;

  void check(const std::string& name, bool ok, const std::string& note = "") {
    ++checks;
    if (!ok) ++failed;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
    if (!ok && !note.empty()) std::cout << " -- " << note;
    std::cout << "\n";
  }
};

int cmd_verify() {
  VerifyReport report;

  // 1. Form equivalence on a composite strongly convex instance.
  {
    auto inst = acgm::random_quadratic_l1(25, 11, true);
    auto es = acgm::acgm_es_init(inst.problem.x0, 1.0);
    auto ex = acgm::acgm_ex_init(inst.problem.x0, 1.0, inst.problem);
    acgm::LineSearchParams ls;
    bool ok = true;
    for (int k = 0; k < 80 && ok; ++k) {
      acgm::acgm_es_iteration(inst.problem, ls, es);
      acgm::acgm_ex_iteration(inst.problem, ls, ex);
      ok = (es.x - ex.x).norm() <= 1e-8 * (1.0 + ex.x.norm());
    }
    report.check("form equivalence (80 iterations)", ok);
  }

  // 2. Convergence certificate on the known-solution instance.
  auto inst = acgm::random_quadratic_l1(30, 12, false);
  {
    SolverConfig cfg;
    const Trace t =
        acgm::run(MethodKind::acgm_es, inst.problem, cfg, Budget::iterations(300));
    const auto flags = acgm::certify_convergence_bound(t, inst.x_star, inst.f_star,
                                                       inst.problem.x0);
    bool ok = true;
    for (bool f : flags) ok = ok && f;
    report.check("weighted objective-gap certificate (300 iterations)", ok);
  }

  // 3. Composite gap monotonicity.  The stop rule halts the run before the
  // rounding stall, where the weighted value term would turn into noise.
  {
    SolverConfig cfg;
    cfg.record_states = true;
    cfg.stop_tol = 1e-6;
    const Trace t =
        acgm::run(MethodKind::acgm_es, inst.problem, cfg, Budget::iterations(300));
    const auto gaps = acgm::gap_sequence(t, inst.x_star, inst.f_star);
    bool ok = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) {
      ok = ok && gaps[i] <= gaps[i - 1] + 1e-9;
    }
    report.check("estimate-sequence gap monotonicity", ok);
  }

  // 4. Guarantee-weight floors, both conditioning regimes.
  {
    bool ok = true;
    std::string note;
    for (bool declare : {false, true}) {
      auto fi = acgm::random_quadratic_l1(20, 13, declare);
      SolverConfig cfg;
      const Trace t =
          acgm::run(MethodKind::acgm_es, fi.problem, cfg, Budget::iterations(150));
      acgm::GuaranteeParams gp;
      gp.mu_f = fi.problem.mu_f;
      gp.mu_psi = fi.problem.mu_psi;
      gp.l_u = t.records[0].lip;
      for (const auto& r : t.records) gp.l_u = std::max(gp.l_u, r.lip);
      for (const auto& r : t.records) {
        if (r.k < 1) continue;
        if (!(r.weight >= acgm::acgm_guarantee_floor(r.k, gp) * (1.0 - 1e-9))) {
          ok = false;
          note = "floor violated at k=" + std::to_string(r.k);
        }
      }
    }
    report.check("guarantee-weight floors (both regimes)", ok, note);
  }

  // 5. Native weights dominate the surrogate under shared estimates.
  {
    acgm::SplitMix64 rng(14);
    bool ok = true;
    double l = 1.0, native = 0.0, surrogate = 0.0, l_prev = 1.0;
    for (int k = 0; k < 500 && ok; ++k) {
      if (rng.next_uniform() < 0.2) l *= 1.0 + rng.next_uniform();
      native += acgm::acgm_weight_a(1.0, native, 0.0, 0.0, l);
      surrogate = acgm::fista_weight_next(surrogate, l_prev, l);
      l_prev = l;
      ok = native >= surrogate * (1.0 - 1e-12);
    }
    report.check("weight dominance over the surrogate recursion", ok);
  }

  // 6. Asymptotic rate constants.
  {
    const auto rc = acgm::asymptotic_rate_constants(0.25, 1.0);
    bool ok = std::abs(rc.b_fgm - 4.0) <= 1e-6 &&
              std::abs(rc.b_amgs - std::pow(1.0 + std::sqrt(1.0 / 6.0), 2)) <= 1e-6;
    for (int i = 1; i <= 95; ++i) {
      ok = ok && acgm::asymptotic_rate_constants(0.01 * i, 1.0).ratio() < 1.0;
    }
    report.check("asymptotic rate constants and per-cost ratio", ok);
  }

  // 7. Line-search ceiling on a composite run.
  {
    auto fi = acgm::random_quadratic_l1(20, 15, true);
    SolverConfig cfg;
    cfg.search.l0 = 30.0;  // deliberate overestimate
    const Trace t =
        acgm::run(MethodKind::acgm_es, fi.problem, cfg, Budget::iterations(120));
    const double lf = fi.problem.lf_hint.value_or(2.0);
    const double ceiling = std::max(cfg.search.r_u * lf, cfg.search.r_d * cfg.search.l0);
    bool ok = true;
    for (const auto& r : t.records) {
      if (r.k >= 1) ok = ok && r.lip <= ceiling * (1.0 + 1e-9);
    }
    report.check("accepted estimates respect the search ceiling", ok);
  }

  std::cout << report.checks << " checks executed, " << report.failed << " failed\n";
  return report.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Composite-objective accelerated gradient solvers and benchmarks"};
  app.require_subcommand(1);

  RawOptions opt;
  std::string config_path;

  auto add_shared = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file; flags take precedence");
    cmd->add_option("--problem", opt.problem,
                    "quadratic_l1_known | lasso_synthetic | deblur | huber_rof_dual");
    cmd->add_option("--solver", opt.solvers,
                    "acgm_es | acgm_ex | fista | fista_cp | amgs | fgm (repeatable)");
    cmd->add_option("--image", opt.image, "PGM file for the imaging problems");
    cmd->add_option("--seed", opt.seed, "instance seed");
    cmd->add_option("--n", opt.n, "dimension (vector problems)");
    cmd->add_option("--rows", opt.rows, "design rows (lasso)");
    cmd->add_option("--n1", opt.n1, "image rows");
    cmd->add_option("--n2", opt.n2, "image columns");
    cmd->add_option("--lambda", opt.lambda, "regularization weight");
    cmd->add_option("--eps", opt.eps, "smoothing parameter (huber_rof_dual)");
    cmd->add_option("--L0", opt.l0, "initial curvature estimate");
    cmd->add_option("--r-u", opt.r_u, "estimate increase factor");
    cmd->add_option("--r-d", opt.r_d, "estimate decrease factor");
    cmd->add_option("--lf", opt.lf, "fixed estimate for fista_cp / fgm");
    cmd->add_option("--fgm-gamma0", opt.fgm_gamma0, "initial curvature for fgm");
    cmd->add_option("--stop-tol", opt.stop_tol, "early-stop step-norm tolerance");
    cmd->add_option("--mu-f", opt.mu_f_override, "override declared smooth strong convexity");
    cmd->add_option("--mu-psi", opt.mu_psi_override,
                    "override declared regularizer strong convexity");
    cmd->add_option("--criterion", opt.criterion, "descent | quadratic");
    cmd->add_option("--budget-iters", opt.budget_iters, "iteration budget");
    cmd->add_option("--budget-wtu", opt.budget_wtu, "simulated-cost budget");
    cmd->add_option("--declare-mu", opt.declare_mu,
                    "advertise strong convexity (quadratic_l1_known)");
    cmd->add_option("--output", opt.output, "output CSV path");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run one solver, write a trace CSV");
  add_shared(run_cmd);
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "run several solvers on one instance");
  add_shared(compare_cmd);

  double b_lu = 1.0, b_muf = 0.0, b_mupsi = 0.0, b_r0 = 1.0;
  int b_kmax = 100;
  std::string b_output = "bounds.csv";
  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "tabulate guarantee floors and gap envelopes");
  bounds_cmd->add_option("--L-u", b_lu, "worst-case accepted estimate");
  bounds_cmd->add_option("--mu-f", b_muf, "smooth strong convexity");
  bounds_cmd->add_option("--mu-psi", b_mupsi, "regularizer strong convexity");
  bounds_cmd->add_option("--kmax", b_kmax, "last iteration index");
  bounds_cmd->add_option("--r0", b_r0, "start distance for the envelope column");
  bounds_cmd->add_option("--output", b_output, "output CSV path");

  app.add_subcommand("verify", "run the built-in verification suite");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) merge_config_file(opt, config_path);
    if (run_cmd->parsed()) return cmd_run(opt);
    if (compare_cmd->parsed()) return cmd_compare(opt);
    if (bounds_cmd->parsed()) return cmd_bounds(b_lu, b_muf, b_mupsi, b_kmax, b_r0, b_output);
    return cmd_verify();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
