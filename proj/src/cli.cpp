#include "hjlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "hjlab/diagnostics.hpp"
#include "hjlab/errors.hpp"
#include "hjlab/estimate.hpp"
#include "hjlab/expression.hpp"
#include "hjlab/field_io.hpp"
#include "hjlab/fp_solver.hpp"
#include "hjlab/hj_solver.hpp"
#include "hjlab/json_io.hpp"
#include "hjlab/mfg_solver.hpp"
#include "hjlab/thresholds.hpp"

namespace hjlab {
namespace {

namespace fs = std::filesystem;

class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void text(const std::string& name, const std::string& content) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
    f << content;
    record(name);
  }
  void json(const std::string& name, const Json& j) { text(name, j.dump(2) + "\n"); }
  void field(const std::string& stem, const Field2D& f) {
    save_grid(dir_ / (stem + ".grid"), f);
    record(stem + ".grid");
    save_csv(dir_ / (stem + ".csv"), f);
    record(stem + ".csv");
  }
  void manifest() {
    std::vector<std::string> files = files_;
    files.push_back("manifest.json");
    std::sort(files.begin(), files.end());
    text("manifest.json", Json{{"files", files}}.dump(2) + "\n");
  }
  const fs::path& path() const { return dir_; }

 private:
  void record(const std::string& name) {
    if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
  }
  fs::path dir_;
  std::vector<std::string> files_;
};

std::string csv_number(double v) { return format_double(v); }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? std::string(1, sep) : "") + parts[i];
  return out;
}

struct Params {
  // shared
  std::string out;
  std::uint64_t seed = 0;
  int n = 64;
  double period = 1.0;
  std::optional<double> tol;
  // Hamiltonian / sources
  double gamma = 2.0;
  double kappa = 1.0;
  std::string source = "0";
  std::string potential = "zero";
  int continuation = 1;
  int max_iters = 60;
  // batches
  int count = 20;
  int audit_count = 200;
  int bandwidth = 8;
  double source_norm = 1.0;
  // search
  int seeds = 8;
  int ascent_iters = 6;
  double band = 4.0;
  double fd_step = 1e-4;
  double initial_step = 0.5;
  // FP
  std::string bx = "0", by = "0";
  std::optional<std::string> drift_u;
  std::optional<double> tau;
  // MFG
  double alpha = 1.0;
  double sigma = 1.0;
  double mollify_eps = 0.0;
  double damping = 1.0;
  int max_outer = 400;
  std::string method = "picard";
  bool diagnostics = false;
  std::size_t holder_pairs = 100000;
  std::vector<double> betas{0.25, 0.5, 0.75};
  std::vector<double> alphas{0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<int> resolutions{64, 128};
  // thresholds
  std::string regime = "stationary-defocusing";
  bool small_data = false;
  std::vector<double> gamma_grid, alpha_grid;
};

struct Context {
  Params& p;
  OutputDir& out;
  std::ostream& stdout_;
  std::vector<std::string> warnings;

  Field2D source_field(const std::string& text, int n) {
    ParsedSource s = parse_source_expression(text, n, p.period);
    if (!s.periodic) warnings.push_back("expression '" + text + "' is not periodic on the cell");
    return s.field;
  }
  std::optional<Field2D> potential_field(int n) {
    if (p.potential == "zero") return std::nullopt;
    return source_field(p.potential, n);
  }
  HamiltonianSpec hamiltonian(int n) {
    HamiltonianSpec h;
    h.gamma = p.gamma;
    h.kappa = p.kappa;
    h.potential = potential_field(n);
    return h;
  }
  BootstrapOptions bootstrap_options() const { return {p.betas, p.holder_pairs, p.seed}; }

  void finish(Json summary, bool ok = true) {
    if (!warnings.empty()) summary["warnings"] = warnings;
    summary["ok"] = ok;
    out.json("summary.json", summary);
    stdout_ << summary.dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------

int cmd_solve_hj(Context& c) {
  const Params& p = c.p;
  HJProblem problem{c.hamiltonian(p.n), c.source_field(p.source, p.n)};
  HJOptions options;
  options.tol = p.tol.value_or(1e-10);
  options.max_iters = p.max_iters;
  const HJSolution sol =
      p.continuation > 1 ? continuation_solve(problem, p.continuation, options) : solve_hj(problem, options);

  Json summary = {{"command", "solve-hj"}, {"solution", to_json(sol)}};
  if (problem.hamiltonian.is_pure_quadratic()) {
    // -Delta u + |grad u|^2 = f - V - lambda.
    Field2D f_eff = problem.source - sol.lambda;
    if (problem.hamiltonian.potential) f_eff -= *problem.hamiltonian.potential;
    summary["estimate"] = to_json(audit(sol.u, f_eff));
  }
  std::ostringstream log;
  log << "iteration,residual_linf,residual_l2,step_length,krylov_iterations\n";
  for (std::size_t i = 0; i < sol.log.size(); ++i)
    log << i << ',' << csv_number(sol.log[i].residual_linf) << ',' << csv_number(sol.log[i].residual_l2) << ','
        << csv_number(sol.log[i].step_length) << ',' << sol.log[i].krylov_iterations << '\n';
  c.out.text("newton_log.csv", log.str());
  c.out.field("u", sol.u);
  c.finish(std::move(summary));
  return kExitOk;
}

Field2D normalized_random_source(const Params& p, std::uint64_t seed) {
  Field2D f = random_band_limited(p.n, p.bandwidth, seed, p.period);
  f *= p.source_norm / lp_norm(f, 2.0);
  return f;
}

int cmd_audit(Context& c) {
  const Params& p = c.p;
  if (p.audit_count < 1) throw std::invalid_argument("--count must be positive");
  HJOptions options;
  options.tol = p.tol.value_or(1e-10);
  options.max_iters = p.max_iters;
  std::ostringstream csv;
  csv << "seed,ratio,lhs_hessian,lhs_grad4,rhs,lambda,newton_iters,status\n";
  double max_ratio = 0.0, max_identity = 0.0;
  int failures = 0;
  for (int i = 0; i < p.audit_count; ++i) {
    const std::uint64_t seed = p.seed + static_cast<std::uint64_t>(i);
    try {
      const AuditedSolve a = solve_and_audit(normalized_random_source(p, seed), options);
      const EstimateReport& r = a.report;
      max_ratio = std::max(max_ratio, r.ratio);
      for (const auto& [name, v] : r.identity_residuals) max_identity = std::max(max_identity, v);
      csv << seed << ',' << csv_number(r.ratio) << ',' << csv_number(r.lhs_hessian) << ','
          << csv_number(r.lhs_grad4) << ',' << csv_number(r.rhs_f2) << ',' << csv_number(a.solution.lambda) << ','
          << a.solution.newton_iters << ',' << (r.degenerate ? "degenerate" : "ok") << '\n';
    } catch (const SolverError& e) {
      ++failures;
      csv << seed << ",,,,,,," << to_string(e.kind()) << '\n';
    }
  }
  c.out.text("audit.csv", csv.str());
  c.finish({{"command", "audit"},
            {"sources", p.audit_count},
            {"failures", failures},
            {"max_ratio", number_json(max_ratio)},
            {"bound", kEstimateConstant},
            {"within_bound", max_ratio <= kEstimateConstant * (1.0 + 1e-3)},
            {"max_identity_residual", number_json(max_identity)}},
           failures == 0);
  return failures == 0 ? kExitOk : kExitSolverFailure;
}

int cmd_search_worst(Context& c) {
  const Params& p = c.p;
  SearchOptions o;
  o.n = p.n;
  o.seeds = p.seeds;
  o.ascent_iters = p.ascent_iters;
  o.band = p.band;
  o.fd_step = p.fd_step;
  o.initial_step = p.initial_step;
  o.source_norm = p.source_norm;
  o.base_seed = p.seed;
  o.tol = p.tol.value_or(1e-10);
  const SearchResult r = adversarial_ratio_search(o);
  std::ostringstream csv;
  csv << "seed,iteration,ratio,accepted\n";
  for (const SearchTrial& t : r.trials)
    csv << t.seed << ',' << t.iteration << ',' << csv_number(t.ratio) << ',' << (t.accepted ? 1 : 0) << '\n';
  c.out.text("search_trials.csv", csv.str());
  c.out.field("best_f", r.best_f);
  c.finish({{"command", "search-worst"}, {"search", to_json(r)}});
  return kExitOk;
}

int cmd_solve_fp(Context& c) {
  const Params& p = c.p;
  Gradient drift;
  if (p.drift_u) {
    HamiltonianSpec h;
    h.gamma = p.gamma;
    h.kappa = p.kappa;
    drift = drift_from_hamiltonian(h, gradient(c.source_field(*p.drift_u, p.n)));
  } else {
    drift = {c.source_field(p.bx, p.n), c.source_field(p.by, p.n)};
  }
  FPOptions o;
  o.tol = p.tol.value_or(1e-10);
  o.tau = p.tau;
  const FPSolution sol = solve_fp(drift, o);
  c.out.field("m", sol.m);
  Json summary = {{"command", "solve-fp"}, {"solution", to_json(sol)}};
  summary["solution"]["weak_residual"] = number_json(fp_weak_residual(sol.m, drift));
  c.finish(std::move(summary));
  return kExitOk;
}

MFGProblem mfg_problem(Context& c, int n) {
  const Params& p = c.p;
  MFGProblem problem;
  problem.hamiltonian = c.hamiltonian(n);
  problem.coupling = {p.sigma, p.alpha, p.mollify_eps};
  problem.n = n;
  problem.period = p.period;
  problem.damping = p.damping;
  problem.tol = p.tol.value_or(1e-9);
  problem.max_outer = p.max_outer;
  return problem;
}

void write_history(OutputDir& out, const MFGSolution& sol) {
  std::ostringstream csv;
  csv << "iteration,fixpoint_gap,residual_hj,residual_fp,lambda,damping\n";
  for (std::size_t i = 0; i < sol.history.size(); ++i) {
    const OuterIterate& h = sol.history[i];
    csv << i + 1 << ',' << csv_number(h.fixpoint_gap) << ',' << csv_number(h.residual_hj) << ','
        << csv_number(h.residual_fp) << ',' << csv_number(h.lambda) << ',' << csv_number(h.damping) << '\n';
  }
  out.text("history.csv", csv.str());
}

int cmd_solve_mfg(Context& c) {
  const Params& p = c.p;
  MFGSolution sol;
  const MFGProblem problem = mfg_problem(c, p.n);
  if (p.method == "picard") {
    sol = solve_mfg(problem);
  } else {
    if (!problem.hamiltonian.is_pure_quadratic() || p.mollify_eps != 0.0)
      throw std::invalid_argument("hopf-cole needs kappa = 1, gamma = 2 and no mollification");
    HopfColeOptions o;
    o.n = p.n;
    o.period = p.period;
    if (p.tol) o.tol = *p.tol;
    sol = solve_mfg_hopf_cole(p.alpha, p.sigma, problem.hamiltonian.potential, o);
  }
  if (p.diagnostics) sol.diagnostics = bootstrap_report(sol, problem.hamiltonian, p.alpha, c.bootstrap_options());
  c.out.field("u", sol.u);
  c.out.field("m", sol.m);
  write_history(c.out, sol);
  c.finish({{"command", "solve-mfg"}, {"method", p.method}, {"solution", to_json(sol)}});
  return kExitOk;
}

int cmd_sweep_alpha(Context& c) {
  const Params& p = c.p;
  if (p.alphas.empty()) throw std::invalid_argument("--alphas must be nonempty");
  const std::vector<AlphaSweepRow> rows = alpha_sweep(mfg_problem(c, p.n), p.alphas, c.bootstrap_options());
  std::ostringstream csv;
  csv << "alpha,lambda,residual_hj,residual_fp,min_m,max_m,w22_u";
  for (double b : p.betas) csv << ",holder_m_" << format_double(b);
  csv << ",fixpoint_gap,outer_iters,converged\n";
  Json json_rows = Json::array();
  bool all = true;
  for (const AlphaSweepRow& r : rows) {
    all = all && r.converged;
    json_rows.push_back(to_json(r));
    csv << csv_number(r.alpha);
    if (r.converged) {
      csv << ',' << csv_number(r.lambda) << ',' << csv_number(r.residual_hj) << ',' << csv_number(r.residual_fp)
          << ',' << csv_number(r.min_m) << ',' << csv_number(r.max_m) << ',' << csv_number(r.w22_u);
      for (double b : p.betas) csv << ',' << csv_number(r.holder_m.at(b));
      csv << ',' << csv_number(r.fixpoint_gap) << ',' << r.outer_iters << ",1\n";
    } else {
      csv << std::string(6 + p.betas.size() + 2, ',') << "0\n";
    }
  }
  c.out.text("sweep.csv", csv.str());
  c.finish({{"command", "sweep-alpha"}, {"rows", json_rows}}, all);
  return all ? kExitOk : kExitSolverFailure;
}

int cmd_thresholds(Context& c) {
  const Params& p = c.p;
  const Regime regime = parse_regime(p.regime);
  const ThresholdVerdict v = evaluate({p.n, p.gamma, p.alpha, regime, p.small_data});
  Json summary = {{"command", "thresholds"},
                  {"query",
                   {{"n", p.n},
                    {"gamma", p.gamma},
                    {"gamma_prime", p.gamma / (p.gamma - 1.0)},
                    {"alpha", p.alpha},
                    {"regime", p.regime},
                    {"small_data", p.small_data}}},
                  {"verdict", to_json(v)}};
  if (!p.gamma_grid.empty() || !p.alpha_grid.empty()) {
    const std::vector<double> gg = p.gamma_grid.empty() ? std::vector<double>{p.gamma} : p.gamma_grid;
    const std::vector<double> ag = p.alpha_grid.empty() ? std::vector<double>{p.alpha} : p.alpha_grid;
    std::ostringstream csv;
    write_regime_csv(csv, p.n, gg, ag, regime, regime_table(p.n, gg, ag, regime, p.small_data));
    c.out.text("thresholds.csv", csv.str());
  }
  c.stdout_ << (v.satisfied ? "satisfied" : "not satisfied") << ": "
            << (v.bounds == BoundedParameter::kAlpha ? "alpha" : "gamma") << " < "
            << format_double(v.threshold) << "  [" << v.formula_id << "] " << v.statement;
  if (!v.notes.empty()) c.stdout_ << "  (" << join(v.notes, ',') << ")";
  c.stdout_ << "\n";
  c.finish(std::move(summary));
  return kExitOk;
}

int cmd_identities(Context& c) {
  const Params& p = c.p;
  if (p.count < 1) throw std::invalid_argument("--count must be positive");
  std::ostringstream csv;
  std::vector<std::string> names;
  double worst = 0.0, min_square = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.count; ++i) {
    const std::uint64_t seed = p.seed + static_cast<std::uint64_t>(i);
    const Field2D u = normalized_random_source(p, seed);
    const auto res = check_identities(u);
    const YoungDecomposition yd = young_decomposition(u, kEstimateConstant);
    if (names.empty()) {
      for (const auto& [k, v] : res) names.push_back(k);
      csv << "seed," << join(names, ',') << ",young_square_part,young_part\n";
    }
    csv << seed;
    for (const auto& [k, v] : res) {
      csv << ',' << csv_number(v);
      worst = std::max(worst, v);
    }
    csv << ',' << csv_number(yd.nonneg_square_part) << ',' << csv_number(yd.young_part) << '\n';
    min_square = std::min(min_square, yd.nonneg_square_part);
  }
  c.out.text("identities.csv", csv.str());
  c.finish({{"command", "identities"},
            {"fields", p.count},
            {"max_residual", number_json(worst)},
            {"min_young_square_part", number_json(min_square)}});
  return kExitOk;
}

int cmd_report(Context& c) {
  const Params& p = c.p;
  std::vector<int> res = p.resolutions;
  if (res.empty()) throw std::invalid_argument("--resolutions must be nonempty");
  std::sort(res.begin(), res.end());
  const BootstrapOptions bo = c.bootstrap_options();
  const std::vector<RefinementRow> rows =
      refinement_stability(mfg_problem(c, res.front()), res, [&](int n) { return c.hamiltonian(n); }, bo);

  MFGSolution finest = solve_mfg(mfg_problem(c, res.back()));
  finest.diagnostics = bootstrap_report(finest, c.hamiltonian(res.back()), p.alpha, bo);
  c.out.field("u", finest.u);
  c.out.field("m", finest.m);

  std::ostringstream csv;
  csv << "n,lambda,max_m";
  for (double b : p.betas) csv << ",holder_m_" << format_double(b);
  csv << ",rel_change_lambda,abs_change_lambda,rel_change_max_m";
  for (double b : p.betas) csv << ",rel_change_holder_m_" << format_double(b);
  csv << '\n';
  Json json_rows = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RefinementRow& r = rows[i];
    csv << r.n << ',' << csv_number(r.lambda) << ',' << csv_number(r.max_m);
    for (double b : p.betas) csv << ',' << csv_number(r.holder_m.at(b));
    if (i == 0) {
      csv << std::string(3 + p.betas.size(), ',');
    } else {
      csv << ',' << csv_number(r.rel_change_lambda) << ',' << csv_number(r.abs_change_lambda) << ','
          << csv_number(r.rel_change_max_m);
      for (double b : p.betas) csv << ',' << csv_number(r.rel_change_holder_m.at(b));
    }
    csv << '\n';
    json_rows.push_back({{"n", r.n},
                         {"lambda", number_json(r.lambda)},
                         {"max_m", number_json(r.max_m)},
                         {"holder_m", map_json(r.holder_m)},
                         {"rel_change_lambda", number_json(r.rel_change_lambda)},
                         {"rel_change_max_m", number_json(r.rel_change_max_m)},
                         {"rel_change_holder_m", map_json(r.rel_change_holder_m)}});
  }
  c.out.text("refinement.csv", csv.str());
  c.finish({{"command", "report"}, {"refinement", json_rows}, {"finest", to_json(finest)}});
  return kExitOk;
}

// ---------------------------------------------------------------------------

void add_grid(CLI::App* sub, Params& p) {
  sub->add_option("--n", p.n, "grid resolution (power of two >= 8)");
  sub->add_option("--period", p.period, "side length of the periodic cell");
}

void add_hamiltonian(CLI::App* sub, Params& p) {
  sub->add_option("--gamma", p.gamma, "growth exponent of H = kappa |p|^gamma + V");
  sub->add_option("--kappa", p.kappa, "coefficient of |p|^gamma");
  sub->add_option("--potential", p.potential, "potential V(x, y) as an expression, or 'zero'");
}

void add_mfg(CLI::App* sub, Params& p) {
  add_grid(sub, p);
  add_hamiltonian(sub, p);
  sub->add_option("--alpha", p.alpha, "coupling exponent");
  sub->add_option("--sigma", p.sigma, "coupling strength");
  sub->add_option("--mollify-eps", p.mollify_eps, "Gaussian mollifier width (0 = none)");
  sub->add_option("--damping", p.damping, "Picard relaxation weight in (0, 1]");
  sub->add_option("--max-outer", p.max_outer, "maximum Picard iterations");
  sub->add_option("--tol", p.tol, "outer tolerance (default 1e-9)");
  sub->add_option("--holder-pairs", p.holder_pairs, "sampled pairs per Hoelder quotient");
  sub->add_option("--betas", p.betas, "Hoelder exponents")->delimiter(',');
}

void add_batch(CLI::App* sub, Params& p, int& count) {
  sub->add_option("--count", count, "number of seeded random fields");
  sub->add_option("--bandwidth", p.bandwidth, "modes with |kx|, |ky| <= bandwidth");
  sub->add_option("--source-norm", p.source_norm, "L^2 norm of every field");
}

Json echo_config(const CLI::App& app, const CLI::App& sub, const std::vector<std::string>& args) {
  Json options = Json::object();
  auto collect = [&](const CLI::App& a) {
    for (const CLI::Option* opt : a.get_options()) {
      std::string name = opt->get_name(false, true);
      if (name.empty() || name == "--help" || name == "-h,--help" || opt->get_name() == "--help") continue;
      while (!name.empty() && name.front() == '-') name.erase(0, 1);
      if (const auto comma = name.find(','); comma != std::string::npos) name = name.substr(comma + 1);
      while (!name.empty() && name.front() == '-') name.erase(0, 1);
      options[name] = opt->count() > 0 ? join(opt->results(), ',') : opt->get_default_str();
    }
  };
  collect(app);
  collect(sub);
  return {{"command", sub.get_name()}, {"argv", std::vector<std::string>(args.begin() + 1, args.end())},
          {"options", options}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"hjlab: viscous Hamilton-Jacobi and stationary mean field game experiments on the torus", "hjlab"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.add_option("--out", p.out, "output directory (default $HJLAB_OUT or ./hjlab-out)");
  app.add_option("--seed", p.seed, "global RNG seed");
  app.set_config("--config", "", "TOML/INI file with option values");

  using Handler = std::function<int(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* hj = app.add_subcommand("solve-hj", "solve -Delta u + H(x, grad u) + lambda = f");
  add_grid(hj, p);
  add_hamiltonian(hj, p);
  hj->add_option("--source", p.source, "source f(x, y) as an expression");
  hj->add_option("--tol", p.tol, "residual tolerance (default 1e-10)");
  hj->add_option("--max-iters", p.max_iters, "Newton iteration cap");
  hj->add_option("--continuation", p.continuation, "number of homotopy stages in the source amplitude");
  commands.emplace_back(hj, cmd_solve_hj);

  auto* au = app.add_subcommand("audit", "audit the W^{2,2} estimate on seeded random sources");
  add_grid(au, p);
  add_batch(au, p, p.audit_count);
  au->add_option("--tol", p.tol, "HJ residual tolerance (default 1e-10)");
  au->add_option("--max-iters", p.max_iters, "Newton iteration cap");
  commands.emplace_back(au, cmd_audit);

  auto* sw = app.add_subcommand("search-worst", "gradient ascent of the estimate ratio over band-limited sources");
  sw->add_option("--n", p.n, "grid resolution");
  sw->add_option("--seeds", p.seeds, "number of random starting points");
  sw->add_option("--ascent-iters", p.ascent_iters, "ascent steps per start");
  sw->add_option("--band", p.band, "modes with 0 < |k| <= band");
  sw->add_option("--fd-step", p.fd_step, "finite-difference step for the ratio gradient");
  sw->add_option("--initial-step", p.initial_step, "initial relative step length");
  sw->add_option("--source-norm", p.source_norm, "L^2 norm of the sources");
  sw->add_option("--tol", p.tol, "HJ residual tolerance (default 1e-10)");
  commands.emplace_back(sw, cmd_search_worst);

  auto* fp = app.add_subcommand("solve-fp", "solve -Delta m - div(b m) = 0, int m = 1");
  add_grid(fp, p);
  fp->add_option("--bx", p.bx, "drift x component as an expression");
  fp->add_option("--by", p.by, "drift y component as an expression");
  fp->add_option("--drift-u", p.drift_u, "use b = D_pH(grad u) for this u instead of --bx/--by");
  fp->add_option("--gamma", p.gamma, "growth exponent used with --drift-u");
  fp->add_option("--kappa", p.kappa, "coefficient used with --drift-u");
  fp->add_option("--tau", p.tau, "pseudo-time step (default 1/(2 |b|_inf^2 + 1))");
  fp->add_option("--tol", p.tol, "residual tolerance (default 1e-10)");
  commands.emplace_back(fp, cmd_solve_fp);

  auto* mfg = app.add_subcommand("solve-mfg", "solve the stationary MFG system");
  add_mfg(mfg, p);
  mfg->add_option("--method", p.method, "picard or hopf-cole")->check(CLI::IsMember({"picard", "hopf-cole"}));
  mfg->add_flag("--diagnostics", p.diagnostics, "attach the regularity-chain report");
  commands.emplace_back(mfg, cmd_solve_mfg);

  auto* sa = app.add_subcommand("sweep-alpha", "alpha continuation with warm starts");
  add_mfg(sa, p);
  sa->add_option("--alphas", p.alphas, "ascending alpha values")->delimiter(',');
  commands.emplace_back(sa, cmd_sweep_alpha);

  auto* th = app.add_subcommand("thresholds", "regularity threshold for (n, gamma, alpha, regime)");
  th->add_option("--n", p.n, "dimension");
  th->add_option("--gamma", p.gamma, "growth exponent");
  th->add_option("--alpha", p.alpha, "coupling exponent");
  th->add_option("--regime", p.regime, "regime name")
      ->check(CLI::IsMember({"stationary-defocusing", "stationary-focusing", "stationary-log",
                             "parabolic-defocusing", "parabolic-focusing", "parabolic-log"}));
  th->add_flag("--small-data", p.small_data, "small coupling strength variant");
  th->add_option("--gamma-grid", p.gamma_grid, "gamma values for a CSV regime table")->delimiter(',');
  th->add_option("--alpha-grid", p.alpha_grid, "alpha values for a CSV regime table")->delimiter(',');
  commands.emplace_back(th, cmd_thresholds);

  auto* id = app.add_subcommand("identities", "integration-by-parts identities on seeded random fields");
  add_grid(id, p);
  add_batch(id, p, p.count);
  commands.emplace_back(id, cmd_identities);

  auto* rp = app.add_subcommand("report", "refinement stability and regularity-chain report of an MFG solve");
  add_mfg(rp, p);
  rp->add_option("--resolutions", p.resolutions, "ascending grid sizes")->delimiter(',');
  commands.emplace_back(rp, cmd_report);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalidInput;
  }

  try {
    for (auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      if (p.out.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        p.out = env && *env ? env : "hjlab-out";
      }
      OutputDir dir(p.out);
      dir.json("config.json", echo_config(app, *sub, args));
      Context ctx{p, dir, out, {}};
      try {
        const int code = handler(ctx);
        dir.manifest();
        return code;
      } catch (const SolverError& e) {
        Json failure = {{"command", sub->get_name()},
                        {"error", e.what()},
                        {"failure", to_string(e.kind())},
                        {"best_residual", number_json(e.best_residual())}};
        if (!e.history().empty()) failure["history"] = e.history();
        failure["ok"] = false;
        dir.json("summary.json", failure);
        dir.manifest();
        err << "solver failure (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitSolverFailure;
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  err << app.help();
  return kExitInvalidInput;
}

int run(int argc, const char* const* argv) {
  return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace hjlab
