#include "csbp/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <thread>

#include "csbp/criteria.hpp"

namespace csbp {

std::pair<double, double> wilson_interval(long k, long n) {
  if (n <= 0) throw ConfigError("wilson_interval: n >= 1");
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double z2 = z * z;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
  // at the boundary counts, center-half is 0 (resp. 1) analytically
  double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = k == n ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

McEstimate run_paths(const ModelParams& p, const McConfig& cfg,
                     std::vector<PathOutcome>& outcomes) {
  validate(p);
  validate(cfg.sim);
  if (cfg.n_paths < 1) throw ConfigError("n_paths >= 1");
  const DerivedParams dp = derive_exponents(p);
  const SimContext ctx(p, cfg.sim.cutoff);

  outcomes.assign(cfg.n_paths, PathOutcome{});
  auto run_range = [&](long lo, long hi) {
    for (long k = lo; k < hi; ++k) {
      RngStream rs = RngStream::for_path(cfg.sim.seed, static_cast<std::uint64_t>(k));
      outcomes[k] = simulate_path(cfg.x0, cfg.y0, p, cfg.sim, rs, dp, ctx);
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  long workers = cfg.workers > 0 ? cfg.workers : (hw > 0 ? hw : 1);
  workers = std::min<long>(workers, cfg.n_paths);
  if (workers <= 1) {
    run_range(0, cfg.n_paths);
  } else {
    std::vector<std::thread> pool;
    long chunk = (cfg.n_paths + workers - 1) / workers;
    for (long w = 0; w < workers; ++w) {
      long lo = w * chunk;
      long hi = std::min(cfg.n_paths, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& t : pool) t.join();
  }

  // aggregation in path order keeps the result independent of scheduling
  McEstimate est;
  est.n_paths = cfg.n_paths;
  double t_sum = 0;
  for (const auto& o : outcomes) {
    switch (o.status) {
      case PathStatus::ExtinctX:
        ++est.n_extinct_x;
        ++est.n_extinct;
        t_sum += o.t_end;
        break;
      case PathStatus::ExtinctY:
        ++est.n_extinct_y;
        ++est.n_extinct;
        t_sum += o.t_end;
        break;
      case PathStatus::Exploded:
        ++est.n_exploded;
        break;
      case PathStatus::Survived:
        ++est.n_survived;
        break;
    }
  }
  est.p_hat = static_cast<double>(est.n_extinct) / est.n_paths;
  auto [lo, hi] = wilson_interval(est.n_extinct, est.n_paths);
  est.ci_lo = lo;
  est.ci_hi = hi;
  if (est.n_extinct > 0) est.mean_t_extinct = t_sum / est.n_extinct;
  return est;
}

McEstimate estimate_extinction_prob(const ModelParams& p, const McConfig& cfg) {
  std::vector<PathOutcome> scratch;
  return run_paths(p, cfg, scratch);
}

namespace {

using ParamField = double ModelParams::*;

const std::map<std::string, ParamField>& param_fields() {
  static const std::map<std::string, ParamField> m = {
      {"a1", &ModelParams::a1},         {"a2", &ModelParams::a2},
      {"theta1", &ModelParams::theta1}, {"theta2", &ModelParams::theta2},
      {"kappa1", &ModelParams::kappa1}, {"kappa2", &ModelParams::kappa2},
      {"b10", &ModelParams::b10},       {"b11", &ModelParams::b11},
      {"b12", &ModelParams::b12},       {"b20", &ModelParams::b20},
      {"b21", &ModelParams::b21},       {"b22", &ModelParams::b22},
      {"r10", &ModelParams::r10},       {"r11", &ModelParams::r11},
      {"r12", &ModelParams::r12},       {"r20", &ModelParams::r20},
      {"r21", &ModelParams::r21},       {"r22", &ModelParams::r22},
      {"alpha1", &ModelParams::alpha1}, {"alpha2", &ModelParams::alpha2}};
  return m;
}

bool apply_key(const std::string& name, double v, ModelParams& p, McConfig& cfg) {
  auto it = param_fields().find(name);
  if (it != param_fields().end()) {
    p.*(it->second) = v;
    return true;
  }
  if (name == "eps_extinct") cfg.sim.eps_extinct = v;
  else if (name == "dt") cfg.sim.dt = v;
  else if (name == "t_max") cfg.sim.t_max = v;
  else if (name == "x0") cfg.x0 = v;
  else if (name == "y0") cfg.y0 = v;
  else return false;
  return true;
}

}  // namespace

bool is_sweepable_key(const std::string& name) {
  return param_fields().count(name) > 0 || name == "eps_extinct" ||
         name == "dt" || name == "t_max" || name == "x0" || name == "y0";
}

std::vector<double> axis_values(const SweepAxis& axis) {
  if (axis.steps < 1) throw ConfigError("sweep axis needs steps >= 1");
  std::vector<double> vals;
  if (axis.steps == 1) {
    vals.push_back(axis.from);
    return vals;
  }
  if (axis.log_scale && !(axis.from > 0 && axis.to > 0))
    throw ConfigError("log-scale sweep axis needs positive endpoints");
  for (int i = 0; i < axis.steps; ++i) {
    double t = static_cast<double>(i) / (axis.steps - 1);
    vals.push_back(axis.log_scale
                       ? std::exp(std::log(axis.from) + t * (std::log(axis.to) - std::log(axis.from)))
                       : axis.from + t * (axis.to - axis.from));
  }
  return vals;
}

std::vector<SweepRow> sweep(const ModelParams& base, const SweepAxis& axis1,
                            const std::optional<SweepAxis>& axis2,
                            const McConfig& cfg) {
  if (!is_sweepable_key(axis1.name)) throw ConfigError("unknown sweep key: " + axis1.name);
  if (axis2 && !is_sweepable_key(axis2->name)) throw ConfigError("unknown sweep key: " + axis2->name);
  std::vector<double> v1 = axis_values(axis1);
  std::vector<double> v2 = axis2 ? axis_values(*axis2) : std::vector<double>{0.0};

  std::vector<SweepRow> rows;
  for (double a : v1) {
    for (double b : v2) {
      SweepRow row;
      row.varied.push_back(a);
      if (axis2) row.varied.push_back(b);
      ModelParams p = base;
      McConfig c = cfg;
      apply_key(axis1.name, a, p, c);
      if (axis2) apply_key(axis2->name, b, p, c);
      try {
        validate(p);
        validate(c.sim);
        RegimeReport rr = classify(p);
        row.verdict = to_string(rr.verdict);
        row.est = estimate_extinction_prob(p, c);
        row.valid = true;
      } catch (const Error& e) {
        row.valid = false;
        row.skip_reason = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<std::string>& names,
                     const std::vector<SweepRow>& rows) {
  for (const auto& n : names) os << n << ',';
  os << "verdict,n_paths,n_extinct,n_exploded,n_survived,p_hat,ci_lo,ci_hi,"
        "mean_t_extinct\n";
  for (const auto& r : rows) {
    if (!r.valid) continue;
    for (double v : r.varied) os << fmt9(v) << ',';
    os << r.verdict << ',' << r.est.n_paths << ',' << r.est.n_extinct << ','
       << r.est.n_exploded << ',' << r.est.n_survived << ',' << fmt9(r.est.p_hat)
       << ',' << fmt9(r.est.ci_lo) << ',' << fmt9(r.est.ci_hi) << ',';
    if (r.est.mean_t_extinct) os << fmt9(*r.est.mean_t_extinct);
    os << '\n';
  }
}

void write_paths_csv(std::ostream& os, const std::vector<PathOutcome>& outcomes) {
  os << "path_id,status,t_end,x_end,y_end\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    os << i << ',' << to_string(o.status) << ',' << fmt9(o.t_end) << ','
       << fmt9(o.x_end) << ',' << fmt9(o.y_end) << '\n';
  }
}

}  // namespace csbp
