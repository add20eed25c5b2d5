// csbp2: simulate, classify and verify the two-type mutually enhancing
// branching system with alpha-stable jumps.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "csbp/criteria.hpp"
#include "csbp/generator.hpp"
#include "csbp/ineqlab.hpp"
#include "csbp/io.hpp"
#include "csbp/montecarlo.hpp"

namespace {

constexpr const char* kVersion = "csbp2 0.1.0";

using namespace csbp;

struct SimFlags {
  std::string params_file;
  double x0 = 1.0, y0 = 1.0;
  long paths = 1000;
  double dt = 1e-3, t_max = 5.0;
  double eps_extinct = 1e-8, cap_explode = 1e12, eps_jump = 1e-3;
  bool no_gaussian = false;
  std::uint64_t seed = 0;
  int workers = 0;
};

void add_sim_flags(CLI::App* cmd, SimFlags& f) {
  cmd->add_option("--params", f.params_file, "parameter JSON file")->required();
  cmd->add_option("--x0", f.x0, "initial x");
  cmd->add_option("--y0", f.y0, "initial y");
  cmd->add_option("--paths", f.paths, "number of paths");
  cmd->add_option("--dt", f.dt, "step size");
  cmd->add_option("--t-max", f.t_max, "time horizon");
  cmd->add_option("--eps-extinct", f.eps_extinct, "extinction proxy threshold");
  cmd->add_option("--cap-explode", f.cap_explode, "explosion proxy threshold");
  cmd->add_option("--eps-jump", f.eps_jump, "small-jump truncation level");
  cmd->add_flag("--no-gaussian-smalljump", f.no_gaussian,
                "disable the matched-variance Gaussian completion");
  cmd->add_option("--seed", f.seed, "RNG seed");
  cmd->add_option("--workers", f.workers, "worker cap (0 = auto)");
}

McConfig to_mc_config(const SimFlags& f) {
  McConfig cfg;
  cfg.n_paths = f.paths;
  cfg.workers = f.workers;
  cfg.x0 = f.x0;
  cfg.y0 = f.y0;
  cfg.sim.dt = f.dt;
  cfg.sim.t_max = f.t_max;
  cfg.sim.eps_extinct = f.eps_extinct;
  cfg.sim.cap_explode = f.cap_explode;
  cfg.sim.cutoff.eps_jump = f.eps_jump;
  cfg.sim.cutoff.gaussian_smalljump = !f.no_gaussian;
  cfg.sim.seed = f.seed;
  return cfg;
}

// --vary grammar: name=from:to:steps[:scale], scale in {lin, log}
SweepAxis parse_vary(const std::string& spec) {
  auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("--vary expects name=from:to:steps[:scale]");
  SweepAxis ax;
  ax.name = spec.substr(0, eq);
  std::string rest = spec.substr(eq + 1);
  std::vector<std::string> parts;
  std::stringstream ss(rest);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() < 3 || parts.size() > 4)
    throw ConfigError("--vary expects name=from:to:steps[:scale]");
  try {
    ax.from = std::stod(parts[0]);
    ax.to = std::stod(parts[1]);
    ax.steps = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw ConfigError("--vary: cannot parse numbers in " + spec);
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") ax.log_scale = true;
    else if (parts[3] == "lin") ax.log_scale = false;
    else throw ConfigError("--vary: scale must be lin or log");
  }
  if (!is_sweepable_key(ax.name)) throw ConfigError("--vary: unknown key " + ax.name);
  return ax;
}

void emit(const json& j, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    atomic_write_file(out_file, j.dump(2) + "\n");
  }
}

int cmd_classify(const std::string& params_file, bool as_json, bool echo,
                 double tie_tol, const std::string& out_file) {
  ModelParams p = load_params_file(params_file);
  if (echo) {
    std::cout << params_to_json(p).dump(2) << "\n";
    return 0;
  }
  RegimeReport rep = classify(p, tie_tol);
  if (as_json) emit(to_json(rep), out_file);
  else if (out_file.empty()) std::cout << report_table(rep);
  else atomic_write_file(out_file, report_table(rep));
  return 0;
}

int cmd_simulate(const SimFlags& f, const std::string& out_file) {
  ModelParams p = load_params_file(f.params_file);
  McConfig cfg = to_mc_config(f);
  std::vector<PathOutcome> outcomes;
  McEstimate est = run_paths(p, cfg, outcomes);
  if (!out_file.empty()) {
    std::ostringstream os;
    write_paths_csv(os, outcomes);
    atomic_write_file(out_file, os.str());
  }
  json j{{"estimate", to_json(est)},
         {"params", params_to_json(p)},
         {"config",
          {{"x0", cfg.x0},
           {"y0", cfg.y0},
           {"paths", cfg.n_paths},
           {"dt", cfg.sim.dt},
           {"t_max", cfg.sim.t_max},
           {"eps_extinct", cfg.sim.eps_extinct},
           {"cap_explode", cfg.sim.cap_explode},
           {"eps_jump", cfg.sim.cutoff.eps_jump},
           {"gaussian_smalljump", cfg.sim.cutoff.gaussian_smalljump},
           {"seed", cfg.sim.seed}}},
         {"notes",
          {"extinction/explosion are threshold proxies for the absorbing "
           "boundaries; the bias of threshold extinction versus the exact "
           "hitting time of 0 is regime-dependent"}}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_sweep(const SimFlags& f, const std::vector<std::string>& vary,
              const std::string& out_file) {
  if (vary.empty() || vary.size() > 2)
    throw ConfigError("sweep needs one or two --vary axes");
  ModelParams p = load_params_file(f.params_file);
  McConfig cfg = to_mc_config(f);
  SweepAxis ax1 = parse_vary(vary[0]);
  std::optional<SweepAxis> ax2;
  if (vary.size() == 2) ax2 = parse_vary(vary[1]);
  auto rows = sweep(p, ax1, ax2, cfg);
  for (const auto& r : rows) {
    if (!r.valid) {
      std::cerr << "skipped grid point (" << ax1.name << "=" << r.varied[0];
      if (ax2) std::cerr << ", " << ax2->name << "=" << r.varied[1];
      std::cerr << "): " << r.skip_reason << "\n";
    }
  }
  std::vector<std::string> names{ax1.name};
  if (ax2) names.push_back(ax2->name);
  std::ostringstream os;
  write_sweep_csv(os, names, rows);
  if (out_file.empty()) std::cout << os.str();
  else atomic_write_file(out_file, os.str());
  return 0;
}

struct FamilyFlags {
  std::string family;
  double rho1 = 2, rho2 = 2, rho = 0.5, delta0 = 1, eps = 0.5, delta = 1.5;
  double n = 1, v = 0.5, cap = 0.5;
  std::string inner;
};

TestFunction build_family(const FamilyFlags& f, const std::string& name) {
  if (name == "power-inverse") return PowerInverse{f.rho1, f.rho2};
  if (name == "power-inverse-weighted")
    return PowerInverseWeighted{f.delta0, f.rho1, f.rho2};
  if (name == "log-type") return LogType{f.delta0, f.n};
  if (name == "linear-cap") return LinearCap{f.v, f.rho};
  if (name == "neg-power-sum") return NegPowerSum{f.rho1, f.rho2, f.rho, f.delta0};
  if (name == "smoothed-y") return SmoothedY{f.rho1, f.rho, f.eps};
  if (name == "smoothed-xy") return SmoothedXY{f.rho1, f.rho, f.eps, f.delta};
  if (name == "theta-family") return ThetaFamily{f.rho1, f.rho2, f.rho, f.eps};
  if (name == "shifted-cap") {
    if (f.inner.empty() || f.inner == "shifted-cap")
      throw ConfigError("shifted-cap needs --inner naming an h-family");
    auto inner = std::make_shared<TestFunction>(build_family(f, f.inner));
    return ShiftedCap{f.cap, inner};
  }
  throw ConfigError("unknown family: " + name);
}

int cmd_verify_generator(const std::string& params_file, const FamilyFlags& ff,
                         const std::string& direction, double box, int grid_n,
                         double lo_factor, const std::string& mode,
                         const std::string& out_file) {
  ModelParams p = load_params_file(params_file);
  validate(p);
  TestFunction tf = build_family(ff, ff.family);
  GridSpec grid;
  grid.nx = grid.ny = grid_n;
  grid.lo_factor = lo_factor;
  Direction dir;
  if (direction == "upper") dir = Direction::upper;
  else if (direction == "lower") dir = Direction::lower;
  else throw ConfigError("--direction must be upper or lower");
  GenMode gm;
  if (mode == "auto") gm = GenMode::automatic;
  else if (mode == "closed") gm = GenMode::closed;
  else if (mode == "numeric") gm = GenMode::numeric;
  else throw ConfigError("--mode must be auto, closed or numeric");
  BoundReport rep = verify_drift_bound(tf, p, box, grid, dir, gm);
  emit(to_json(rep), out_file);
  return rep.satisfied ? 0 : 1;
}

struct IneqFlags {
  std::string lemma;
  long trials = 10000;
  std::uint64_t seed = 0;
  double alpha = 1.5;
  double rho1 = 2, rho2 = 2, rho = 0.25, delta = 8, eps0 = 0.1;
  double p1 = 1, p2 = 1, p3 = 0.75, p4 = 0.75;
  double c1 = 1, c2 = 1, c3 = 1, c4 = 1;
  double a1 = 1, a2 = 1, b1 = 1, b2 = 1;
  double theta1 = 0, theta2 = 0, kappa1 = 1, kappa2 = 1;
  double r1 = -0.3, r2 = -0.3;
  int v_points = 10;
};

int cmd_ineq(const IneqFlags& f, const std::string& out_file) {
  RngStream rng(f.seed);
  IneqReport rep;
  if (f.lemma == "young-i" || f.lemma == "young-ii-le1" ||
      f.lemma == "young-ii-gt1" || f.lemma == "young-iii") {
    YoungInputs in;
    in.p1 = f.p1;
    in.p2 = f.p2;
    in.p3 = f.p3;
    in.p4 = f.p4;
    in.c1 = f.c1;
    in.c2 = f.c2;
    in.c3 = f.c3;
    YoungVariant v = YoungVariant::i;
    if (f.lemma == "young-ii-le1") v = YoungVariant::ii_le1;
    else if (f.lemma == "young-ii-gt1") v = YoungVariant::ii_gt1;
    else if (f.lemma == "young-iii") v = YoungVariant::iii;
    rep = young_check(v, in, f.trials, rng);
  } else if (f.lemma == "box-3-2" || f.lemma == "box-7-1") {
    BoxInputs in;
    in.r1 = f.r1;
    in.r2 = f.r2;
    in.theta1 = f.theta1;
    in.theta2 = f.theta2;
    in.kappa1 = f.kappa1;
    in.kappa2 = f.kappa2;
    in.rho1 = f.rho1;
    in.rho2 = f.rho2;
    in.c1 = f.c1;
    in.c2 = f.c2;
    in.c3 = f.c3;
    in.c4 = f.c4;
    rep = find_box_constant(f.lemma == "box-3-2" ? BoxLemma::L3_2 : BoxLemma::L7_1, in);
  } else if (f.lemma == "delta0-5-1" || f.lemma == "delta0-5-2" ||
             f.lemma == "delta0-5-3") {
    DeltaInputs in;
    in.a1 = f.a1;
    in.a2 = f.a2;
    in.b1 = f.b1;
    in.b2 = f.b2;
    in.theta1 = f.theta1;
    in.theta2 = f.theta2;
    in.kappa1 = f.kappa1;
    in.kappa2 = f.kappa2;
    in.r1 = f.r1;
    in.r2 = f.r2;
    in.rho1 = f.rho1;
    in.rho2 = f.rho2;
    in.rho = f.rho;
    in.eps0 = f.eps0;
    DeltaLemma l = DeltaLemma::L5_1;
    if (f.lemma == "delta0-5-2") l = DeltaLemma::L5_2;
    else if (f.lemma == "delta0-5-3") l = DeltaLemma::L5_3;
    rep = find_delta0(l, in, f.trials, rng);
  } else if (f.lemma == "kvz-i" || f.lemma == "kvz-ii") {
    StableMeasure m(f.alpha);
    std::vector<double> grid;
    for (int i = 1; i <= f.v_points; ++i)
      grid.push_back(static_cast<double>(i) / f.v_points);
    rep = kvz_bounds_check(m, f.rho1, f.rho, grid,
                           f.lemma == "kvz-i" ? KvzMode::lemma_i : KvzMode::lemma_ii,
                           f.delta);
  } else {
    throw ConfigError("unknown lemma: " + f.lemma);
  }
  emit(to_json(rep), out_file);
  return rep.satisfied ? 0 : 1;
}

int cmd_stable_check(double alpha, std::vector<double> us, double lambda,
                     double dt, long paths, double eps, std::uint64_t seed,
                     bool no_gaussian, const std::string& out_file) {
  if (us.empty()) us = {0.5, 1.0, 2.0};
  StableMeasure m(alpha);
  CutoffScheme cut;
  cut.eps_jump = eps;
  cut.gaussian_smalljump = !no_gaussian;
  JumpDriver drv(m, cut);
  RngStream rng(seed);
  std::vector<double> sums(us.size(), 0.0), sq(us.size(), 0.0);
  for (long i = 0; i < paths; ++i) {
    double dj = drv.sample(lambda, dt, rng);
    for (std::size_t k = 0; k < us.size(); ++k) {
      double w = std::exp(-us[k] * dj);
      sums[k] += w;
      sq[k] += w * w;
    }
  }
  json rows = json::array();
  bool all_pass = true;
  for (std::size_t k = 0; k < us.size(); ++k) {
    double mean = sums[k] / paths;
    double var = sq[k] / paths - mean * mean;
    double se = std::sqrt(var / paths);
    double analytic = std::exp(dt * lambda * m.laplace_exponent(us[k]));
    double truncated =
        std::exp(dt * lambda * laplace_exponent_truncated(m, us[k], cut));
    double slack = std::fabs(analytic - truncated);
    bool pass = std::fabs(mean - analytic) <= 3.0 * se + slack;
    all_pass = all_pass && pass;
    rows.push_back({{"u", us[k]},
                    {"empirical", mean},
                    {"analytic", analytic},
                    {"truncated_theory", truncated},
                    {"stderr", se},
                    {"truncation_slack", slack},
                    {"pass", pass}});
  }
  json j{{"alpha", alpha}, {"lambda", lambda},       {"dt", dt},
         {"paths", paths}, {"eps_jump", eps},        {"gaussian_smalljump", !no_gaussian},
         {"seed", seed},   {"checks", rows},         {"pass", all_pass}};
  emit(j, out_file);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-type branching SDE toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "evaluate theorem hypotheses");
  std::string cls_params, cls_out;
  bool cls_json = false, cls_table = false, cls_echo = false;
  double cls_tie_tol = 0.0;
  classify_cmd->add_option("--params", cls_params, "parameter JSON file")->required();
  classify_cmd->add_flag("--json", cls_json, "emit the report as JSON");
  classify_cmd->add_flag("--table", cls_table, "emit an aligned text table");
  classify_cmd->add_flag("--echo-params", cls_echo, "echo the loaded parameters as JSON");
  classify_cmd->add_option("--tie-tol", cls_tie_tol, "tie tolerance for the channel minimum");
  classify_cmd->add_option("--out", cls_out, "write the report to a file");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo over sample paths");
  SimFlags sim_flags;
  std::string sim_out;
  add_sim_flags(sim_cmd, sim_flags);
  sim_cmd->add_option("--out", sim_out, "per-path CSV output file");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweeps with verdicts");
  SimFlags sweep_flags;
  std::string sweep_out;
  std::vector<std::string> vary;
  add_sim_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--vary", vary, "axis spec name=from:to:steps[:scale]")
      ->expected(1, 2);
  sweep_cmd->add_option("--out", sweep_out, "sweep CSV output file");

  // verify-generator
  auto* ver_cmd = app.add_subcommand("verify-generator", "drift bound certification");
  std::string ver_params, ver_dir = "upper", ver_mode = "auto", ver_out;
  FamilyFlags ff;
  double ver_box = 1.0, ver_lo = 1e-6;
  int ver_grid = 64;
  ver_cmd->add_option("--params", ver_params, "parameter JSON file")->required();
  ver_cmd->add_option("--family", ff.family, "test function family")->required();
  ver_cmd->add_option("--rho1", ff.rho1, "family parameter rho1 (or theta1)");
  ver_cmd->add_option("--rho2", ff.rho2, "family parameter rho2 (or theta2)");
  ver_cmd->add_option("--rho", ff.rho, "outer exponent rho");
  ver_cmd->add_option("--delta0", ff.delta0, "weight delta0");
  ver_cmd->add_option("--eps", ff.eps, "smoothing epsilon");
  ver_cmd->add_option("--delta", ff.delta, "smoothing delta");
  ver_cmd->add_option("--n", ff.n, "log-type box size n");
  ver_cmd->add_option("--v", ff.v, "linear-cap level v");
  ver_cmd->add_option("--cap", ff.cap, "shifted-cap level c");
  ver_cmd->add_option("--inner", ff.inner, "inner family for shifted-cap");
  ver_cmd->add_option("--direction", ver_dir, "upper or lower");
  ver_cmd->add_option("--box", ver_box, "box size c");
  ver_cmd->add_option("--grid", ver_grid, "grid nodes per axis");
  ver_cmd->add_option("--lo-factor", ver_lo, "grid lower factor");
  ver_cmd->add_option("--mode", ver_mode, "auto, closed or numeric");
  ver_cmd->add_option("--out", ver_out, "write the report to a file");

  // ineq
  auto* ineq_cmd = app.add_subcommand("ineq", "auxiliary inequality lab");
  IneqFlags inf;
  std::string ineq_out;
  ineq_cmd->add_option("--lemma", inf.lemma,
                       "young-i|young-ii-le1|young-ii-gt1|young-iii|box-3-2|"
                       "box-7-1|delta0-5-1|delta0-5-2|delta0-5-3|kvz-i|kvz-ii")
      ->required();
  ineq_cmd->add_option("--trials", inf.trials, "trials / cloud size");
  ineq_cmd->add_option("--seed", inf.seed, "RNG seed");
  ineq_cmd->add_option("--alpha", inf.alpha, "stability index");
  ineq_cmd->add_option("--rho1", inf.rho1, "rho1");
  ineq_cmd->add_option("--rho2", inf.rho2, "rho2");
  ineq_cmd->add_option("--rho", inf.rho, "rho");
  ineq_cmd->add_option("--delta", inf.delta, "delta for the kvz bound");
  ineq_cmd->add_option("--eps0", inf.eps0, "eps0 (lemma 5.2)");
  ineq_cmd->add_option("--p1", inf.p1, "exponent p1");
  ineq_cmd->add_option("--p2", inf.p2, "exponent p2");
  ineq_cmd->add_option("--p3", inf.p3, "exponent p3");
  ineq_cmd->add_option("--p4", inf.p4, "exponent p4");
  ineq_cmd->add_option("--c1", inf.c1, "coefficient c1");
  ineq_cmd->add_option("--c2", inf.c2, "coefficient c2");
  ineq_cmd->add_option("--c3", inf.c3, "coefficient c3");
  ineq_cmd->add_option("--c4", inf.c4, "coefficient c4");
  ineq_cmd->add_option("--a1", inf.a1, "a1");
  ineq_cmd->add_option("--a2", inf.a2, "a2");
  ineq_cmd->add_option("--b1", inf.b1, "aggregated b1");
  ineq_cmd->add_option("--b2", inf.b2, "aggregated b2");
  ineq_cmd->add_option("--theta1", inf.theta1, "theta1");
  ineq_cmd->add_option("--theta2", inf.theta2, "theta2");
  ineq_cmd->add_option("--kappa1", inf.kappa1, "kappa1");
  ineq_cmd->add_option("--kappa2", inf.kappa2, "kappa2");
  ineq_cmd->add_option("--r1", inf.r1, "dominant exponent r1");
  ineq_cmd->add_option("--r2", inf.r2, "dominant exponent r2");
  ineq_cmd->add_option("--v-points", inf.v_points, "points of the v grid");
  ineq_cmd->add_option("--out", ineq_out, "write the report to a file");

  // stable-check
  auto* st_cmd = app.add_subcommand("stable-check",
                                    "empirical vs analytic Laplace transform");
  double st_alpha = 1.5, st_lambda = 1.0, st_dt = 0.1, st_eps = 1e-4;
  long st_paths = 100000;
  std::uint64_t st_seed = 0;
  bool st_no_gauss = false;
  std::vector<double> st_us;
  std::string st_out;
  st_cmd->add_option("--alpha", st_alpha, "stability index")->required();
  st_cmd->add_option("--u", st_us, "Laplace argument(s)");
  st_cmd->add_option("--lambda", st_lambda, "jump intensity scale");
  st_cmd->add_option("--dt", st_dt, "step size");
  st_cmd->add_option("--paths", st_paths, "number of increments");
  st_cmd->add_option("--eps", st_eps, "small-jump truncation level");
  st_cmd->add_option("--seed", st_seed, "RNG seed");
  st_cmd->add_flag("--no-gaussian", st_no_gauss, "disable the Gaussian completion");
  st_cmd->add_option("--out", st_out, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*classify_cmd)
      return cmd_classify(cls_params, cls_json && !cls_table, cls_echo,
                          cls_tie_tol, cls_out);
    if (*sim_cmd) return cmd_simulate(sim_flags, sim_out);
    if (*sweep_cmd) return cmd_sweep(sweep_flags, vary, sweep_out);
    if (*ver_cmd)
      return cmd_verify_generator(ver_params, ff, ver_dir, ver_box, ver_grid,
                                  ver_lo, ver_mode, ver_out);
    if (*ineq_cmd) return cmd_ineq(inf, ineq_out);
    if (*st_cmd)
      return cmd_stable_check(st_alpha, st_us, st_lambda, st_dt, st_paths,
                              st_eps, st_seed, st_no_gauss, st_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
