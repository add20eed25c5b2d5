#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "csbp/simulator.hpp"

namespace csbp {

struct McConfig {
  long n_paths = 1000;
  SimConfig sim;
  int workers = 0;  // 0 = auto (hardware concurrency)
  double x0 = 1.0, y0 = 1.0;
};

struct McEstimate {
  long n_paths = 0;
  long n_extinct = 0, n_exploded = 0, n_survived = 0;
  long n_extinct_x = 0, n_extinct_y = 0;
  double p_hat = 0;
  double ci_lo = 0, ci_hi = 0;  // 95% Wilson interval
  std::optional<double> mean_t_extinct;
};

// 95% Wilson score interval; well behaved at k = 0, which is the expected
// outcome in non-extinction regimes
std::pair<double, double> wilson_interval(long k, long n);

// n_paths independent paths with per-path RNG streams derived from
// (seed, path index); bit-identical for any worker count.
McEstimate estimate_extinction_prob(const ModelParams& p, const McConfig& cfg);

// same, but also returns the per-path outcomes (ordered by path index)
McEstimate run_paths(const ModelParams& p, const McConfig& cfg,
                     std::vector<PathOutcome>& outcomes);

struct SweepAxis {
  std::string name;
  double from = 0, to = 0;
  int steps = 1;
  bool log_scale = false;
};

struct SweepRow {
  std::vector<double> varied;
  bool valid = false;
  std::string skip_reason;
  std::string verdict;
  McEstimate est;
};

// Axis names: any ModelParams key, plus eps_extinct, dt, t_max, x0, y0.
std::vector<double> axis_values(const SweepAxis& axis);
bool is_sweepable_key(const std::string& name);

std::vector<SweepRow> sweep(const ModelParams& base, const SweepAxis& axis1,
                            const std::optional<SweepAxis>& axis2,
                            const McConfig& cfg);

// header: <varied names...>,verdict,n_paths,n_extinct,n_exploded,n_survived,
//         p_hat,ci_lo,ci_hi,mean_t_extinct; floats at 9 significant digits;
// invalid grid points are skipped (they are flagged in the returned rows)
void write_sweep_csv(std::ostream& os, const std::vector<std::string>& names,
                     const std::vector<SweepRow>& rows);

void write_paths_csv(std::ostream& os, const std::vector<PathOutcome>& outcomes);

}  // namespace csbp
