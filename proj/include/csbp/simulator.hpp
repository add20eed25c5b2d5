#pragma once

#include <cstdint>
#include <string>

#include "csbp/model.hpp"
#include "csbp/rng.hpp"
#include "csbp/stable.hpp"

namespace csbp {

struct SimConfig {
  double dt = 1e-3;
  double t_max = 5.0;
  double eps_extinct = 1e-8;   // extinction proxy threshold
  double cap_explode = 1e12;   // explosion proxy threshold
  CutoffScheme cutoff;
  std::uint64_t seed = 0;
};

void validate(const SimConfig& cfg);  // throws ConfigError

enum class PathStatus { ExtinctX, ExtinctY, Survived, Exploded };

const char* to_string(PathStatus s);
PathStatus path_status_from_string(const std::string& s);

struct PathOutcome {
  PathStatus status;
  double t_end;
  double x_end, y_end;
};

// Frozen per-run sampling state (measures and cutoff moments); building it
// once keeps the per-step cost down.
struct SimContext {
  JumpDriver jx, jy;
  SimContext(const ModelParams& p, const CutoffScheme& cut);
};

// One tamed Euler step with frozen coefficients evaluated at the left
// endpoint. Per step the draw order is fixed: normal for x, normal for y,
// then the jump draws for x, then for y; absorbed coordinates still burn
// their normal draws so parallel couplings stay aligned. The drift decrement
// is clamped at the current value, so a coordinate cannot be driven negative
// by its own death term; any remaining negative excursion absorbs at 0.
State step(const State& s, const ModelParams& p, const DerivedParams& dp,
           const SimConfig& cfg, RngStream& rng, const SimContext& ctx);
State step(const State& s, const ModelParams& p, const DerivedParams& dp,
           const SimConfig& cfg, RngStream& rng);

// Iterates step until a coordinate falls to eps_extinct, a coordinate reaches
// cap_explode, or t reaches t_max. t_end is the left endpoint of the
// triggering step.
PathOutcome simulate_path(double x0, double y0, const ModelParams& p,
                          const SimConfig& cfg, RngStream& rng);
PathOutcome simulate_path(double x0, double y0, const ModelParams& p,
                          const SimConfig& cfg, RngStream& rng,
                          const DerivedParams& dp, const SimContext& ctx);

}  // namespace csbp
