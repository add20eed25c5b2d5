#pragma once

// Shared classifier and Monte Carlo fixtures. Each builder returns a valid
// parameter set whose expected verdict is pinned by hand arithmetic on the
// regime conditions (noted inline).

#include <cmath>

#include "csbp/model.hpp"
#include "csbp/rng.hpp"

namespace fixtures {

using csbp::ModelParams;

inline ModelParams blank() {
  ModelParams p;
  p.a1 = p.a2 = 1;
  p.theta1 = p.theta2 = 0;
  p.kappa1 = p.kappa2 = 1;
  p.b10 = p.b20 = 0;
  p.b11 = p.b21 = 1;
  p.r11 = p.r21 = 2;
  p.b12 = p.b22 = 0;
  p.r10 = p.r20 = 0;
  p.r12 = p.r22 = 0;
  p.alpha1 = p.alpha2 = 1.5;
  return p;
}

// r1 = r2 = 0.5 >= 0 (diffusion-only channels)
inline ModelParams prop_1_2() {
  ModelParams p = blank();
  p.a1 = p.a2 = 0.5;
  p.kappa1 = p.kappa2 = 0.5;
  p.r11 = p.r21 = 2.5;
  return p;
}

// r1 = 0 and theta2-1 = -0.7 < r2 = -0.5 < 0
inline ModelParams thm_1_1a_i() {
  ModelParams p = blank();
  p.r11 = 2.0;
  p.theta2 = 0.3;
  p.kappa2 = 0.4;
  p.r21 = 1.5;
  return p;
}

inline ModelParams thm_1_1a_ii() { return csbp::swap_blocks(thm_1_1a_i()); }

// theta = 0, kappa = 0.5, r = -0.3: (0.7)^2 = 0.49 > 0.25
inline ModelParams thm_1_1() {
  ModelParams p = blank();
  p.kappa1 = p.kappa2 = 0.5;
  p.r11 = p.r21 = 1.7;
  return p;
}

// critical surface (0.7)^2 = kappa1 kappa2 with drift-dominant channels and
// (a/b)^{2/0.7} on the requested side of 1
inline ModelParams thm_1_4_base(double a) {
  ModelParams p = blank();
  p.a1 = p.a2 = a;
  p.kappa1 = p.kappa2 = 0.7;
  p.b10 = p.b20 = 1;
  p.r10 = p.r20 = 0.7;  // r_i = -0.3 from the drift channel alone
  p.r11 = p.r21 = 2.0;  // diffusion candidate 0 stays above the minimum
  return p;
}
inline ModelParams thm_1_4_i() { return thm_1_4_base(1.3); }   // ratio > 1
inline ModelParams thm_1_4bb() { return thm_1_4_base(0.8); }   // ratio < 1

// symmetric equality cluster: b12=b22=0, r10-1 = r11-2 = r20-1 = r21-2 = -0.3,
// theta1=theta2=0.3, kappa = r+1-theta = 0.4, a1 a2 = 1.2 >= b1 b2 = 1
inline ModelParams thm_1_4_ii() {
  ModelParams p = blank();
  p.a1 = 2.0;
  p.a2 = 0.6;
  p.theta1 = p.theta2 = 0.3;
  p.kappa1 = p.kappa2 = 0.4;
  p.b10 = p.b20 = 0.5;
  p.b11 = p.b21 = 0.5;
  p.r10 = p.r20 = 0.7;
  p.r11 = p.r21 = 1.7;
  return p;
}

// r1 = -0.5 <= theta1-1 = -0.2; the Y side is kept supercritical (r2 = 0.5)
inline ModelParams thm_1_2a_i() {
  ModelParams p = blank();
  p.a1 = 0.1;
  p.theta1 = 0.8;
  p.kappa1 = 2;
  p.b10 = 2;
  p.r10 = 0.5;
  p.b11 = 0.5;
  p.r11 = 2.5;
  p.a2 = 0.1;
  p.theta2 = 0.5;
  p.kappa2 = 1;
  p.b20 = 0.1;
  p.r20 = 1;
  p.b21 = 0.5;
  p.r21 = 2.5;
  return p;
}

inline ModelParams thm_1_2a_ii() { return csbp::swap_blocks(thm_1_2a_i()); }

// drift-dominant, (1.3): 0.49 < 0.64, C1(i) holds
inline ModelParams thm_1_2_i() {
  ModelParams p = blank();
  p.kappa1 = p.kappa2 = 0.8;
  p.b10 = p.b20 = 1;
  p.r10 = p.r20 = 0.7;
  p.r11 = p.r21 = 2.0;
  return p;
}

// diffusion-dominant with active drifts: (1.6) holds, (1.3) holds, C2(i)
// holds because r1 = r2
inline ModelParams thm_1_2_ii() {
  ModelParams p = blank();
  p.kappa1 = p.kappa2 = 0.8;
  p.b10 = p.b20 = 1;
  p.r10 = p.r20 = 1.2;  // drift candidate 0.2 >= diffusion candidate -0.3
  p.r11 = p.r21 = 1.7;
  return p;
}

// matches (iii) only: C1 and C2 both fail, cross inequalities strict
inline ModelParams thm_1_2_iii() {
  ModelParams p = blank();
  p.theta1 = 0.7;
  p.theta2 = 0.2;
  p.kappa1 = 0.25;
  p.kappa2 = 0.3;
  p.b10 = 1;
  p.r10 = 1.0;  // candidate 0 >= r11-2 = -0.2
  p.b11 = 1;
  p.r11 = 1.8;
  p.b20 = 1;
  p.r20 = 0.8;  // candidate -0.2 >= r21-2 = -0.6
  p.b21 = 1;
  p.r21 = 1.4;
  return p;
}

// critical surface with diffusion-only channels: every theorem's side
// conditions fail, so the classifier must refuse to guess
inline ModelParams undetermined_critical() {
  ModelParams p = blank();
  p.kappa1 = p.kappa2 = 0.7;
  p.r11 = p.r21 = 1.7;
  return p;
}

// random valid parameter draws for the exclusivity sweep
inline ModelParams random_valid(csbp::RngStream& rng) {
  auto lu = [&](double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng.next_double());
  };
  ModelParams p;
  p.a1 = lu(0.1, 3);
  p.a2 = lu(0.1, 3);
  p.kappa1 = lu(0.1, 3);
  p.kappa2 = lu(0.1, 3);
  p.theta1 = rng.next_double() < 0.3 ? 0.0 : 1.3 * rng.next_double();
  p.theta2 = rng.next_double() < 0.3 ? 0.0 : 1.3 * rng.next_double();
  auto channel = [&](double& b, double& r, double p_off) {
    if (rng.next_double() < p_off) b = 0;
    else b = lu(0.1, 3);
    r = 3.0 * rng.next_double();
  };
  channel(p.b10, p.r10, 0.4);
  channel(p.b11, p.r11, 0.3);
  channel(p.b12, p.r12, 0.3);
  if (p.b11 == 0 && p.b12 == 0) p.b11 = lu(0.1, 3);
  channel(p.b20, p.r20, 0.4);
  channel(p.b21, p.r21, 0.3);
  channel(p.b22, p.r22, 0.3);
  if (p.b21 == 0 && p.b22 == 0) p.b21 = lu(0.1, 3);
  p.alpha1 = 1.05 + 0.9 * rng.next_double();
  p.alpha2 = 1.05 + 0.9 * rng.next_double();
  return p;
}

}  // namespace fixtures
