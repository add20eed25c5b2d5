#include "csbp/simulator.hpp"

#include <cmath>

namespace csbp {

void validate(const SimConfig& cfg) {
  if (!(cfg.dt > 0)) throw ConfigError("dt > 0");
  if (!(cfg.t_max > 0)) throw ConfigError("t_max > 0");
  if (!(cfg.dt < cfg.t_max)) throw ConfigError("dt < t_max");
  if (!(cfg.eps_extinct > 0 && cfg.eps_extinct < 1)) throw ConfigError("0 < eps_extinct < 1");
  if (!(cfg.cap_explode > 1)) throw ConfigError("cap_explode > 1");
  if (!(cfg.cutoff.eps_jump > 0)) throw ConfigError("eps_jump > 0");
}

const char* to_string(PathStatus s) {
  switch (s) {
    case PathStatus::ExtinctX: return "ExtinctX";
    case PathStatus::ExtinctY: return "ExtinctY";
    case PathStatus::Survived: return "Survived";
    case PathStatus::Exploded: return "Exploded";
  }
  return "?";
}

PathStatus path_status_from_string(const std::string& s) {
  if (s == "ExtinctX") return PathStatus::ExtinctX;
  if (s == "ExtinctY") return PathStatus::ExtinctY;
  if (s == "Survived") return PathStatus::Survived;
  if (s == "Exploded") return PathStatus::Exploded;
  throw ConfigError("unknown path status: " + s);
}

SimContext::SimContext(const ModelParams& p, const CutoffScheme& cut)
    : jx(StableMeasure(p.alpha1), cut), jy(StableMeasure(p.alpha2), cut) {}

State step(const State& s, const ModelParams& p, const DerivedParams& dp,
           const SimConfig& cfg, RngStream& rng, const SimContext& ctx) {
  (void)dp;
  const double dt = cfg.dt;
  const double sqrt_dt = std::sqrt(dt);
  const double zx = rng.next_normal();
  const double zy = rng.next_normal();

  State out;
  if (s.x > 0.0) {
    double inter = p.a1 * pow00(s.x, p.theta1) * pow00(s.y, p.kappa1) * dt;
    double death = p.b10 * pow00(s.x, p.r10) * dt;
    if (death > s.x) death = s.x;  // the death term alone cannot overshoot 0
    double sig = p.b11 * std::sqrt(2.0 * pow00(s.x, p.r11));
    double lam = p.b12 * pow00(s.x, p.r12);
    double dj = lam > 0.0 ? ctx.jx.sample(lam, dt, rng) : 0.0;
    double xn = s.x + inter - death + sig * sqrt_dt * zx + dj;
    out.x = xn < 0.0 ? 0.0 : xn;
  } else {
    out.x = 0.0;
  }
  if (s.y > 0.0) {
    double inter = p.a2 * pow00(s.y, p.theta2) * pow00(s.x, p.kappa2) * dt;
    double death = p.b20 * pow00(s.y, p.r20) * dt;
    if (death > s.y) death = s.y;
    double sig = p.b21 * std::sqrt(2.0 * pow00(s.y, p.r21));
    double lam = p.b22 * pow00(s.y, p.r22);
    double dj = lam > 0.0 ? ctx.jy.sample(lam, dt, rng) : 0.0;
    double yn = s.y + inter - death + sig * sqrt_dt * zy + dj;
    out.y = yn < 0.0 ? 0.0 : yn;
  } else {
    out.y = 0.0;
  }
  return out;
}

State step(const State& s, const ModelParams& p, const DerivedParams& dp,
           const SimConfig& cfg, RngStream& rng) {
  SimContext ctx(p, cfg.cutoff);
  return step(s, p, dp, cfg, rng, ctx);
}

PathOutcome simulate_path(double x0, double y0, const ModelParams& p,
                          const SimConfig& cfg, RngStream& rng,
                          const DerivedParams& dp, const SimContext& ctx) {
  if (!(x0 > cfg.eps_extinct && x0 < cfg.cap_explode) ||
      !(y0 > cfg.eps_extinct && y0 < cfg.cap_explode))
    throw ConfigError("initial state must lie in (eps_extinct, cap_explode)");
  const long n_steps = static_cast<long>(std::ceil(cfg.t_max / cfg.dt - 1e-12));
  State s{x0, y0};
  for (long k = 0; k < n_steps; ++k) {
    State ns = step(s, p, dp, cfg, rng, ctx);
    const double t_left = k * cfg.dt;
    const bool ext_x = ns.x <= cfg.eps_extinct;
    const bool ext_y = ns.y <= cfg.eps_extinct;
    if (ext_x || ext_y) {
      PathStatus st;
      if (ext_x && ext_y) st = ns.x <= ns.y ? PathStatus::ExtinctX : PathStatus::ExtinctY;
      else st = ext_x ? PathStatus::ExtinctX : PathStatus::ExtinctY;
      return {st, t_left, ns.x, ns.y};
    }
    if (ns.x >= cfg.cap_explode || ns.y >= cfg.cap_explode)
      return {PathStatus::Exploded, t_left, ns.x, ns.y};
    s = ns;
  }
  return {PathStatus::Survived, cfg.t_max, s.x, s.y};
}

PathOutcome simulate_path(double x0, double y0, const ModelParams& p,
                          const SimConfig& cfg, RngStream& rng) {
  DerivedParams dp = derive_exponents(p);
  SimContext ctx(p, cfg.cutoff);
  return simulate_path(x0, y0, p, cfg, rng, dp, ctx);
}

}  // namespace csbp
