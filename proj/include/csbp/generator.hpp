#pragma once

#include <optional>
#include <string>

#include "csbp/model.hpp"
#include "csbp/stable.hpp"
#include "csbp/testfunction.hpp"

namespace csbp {

enum class Coord { X = 1, Y = 2 };
enum class GenMode { closed, numeric, automatic };
enum class Direction { upper, lower };
enum class PowerSign { neg_power, pos_power };

// Adaptive quadrature of ∫_0^inf K_z g mu(dz) where
//   K_z^1 g = g(x+z,y) - g(x,y) - g_x(x,y) z   (coord X, K_z^2 symmetric).
// Small z uses the Taylor form z^2 ∫_0^1 g''(.+zu)(1-u)du so the z^{-1-alpha}
// singularity never meets a cancellation; the tail substitutes z = 1/t.
double k_integral_numeric(const TestFunction& tf, double x, double y,
                          Coord coord, const StableMeasure& m,
                          double rel_tol = 1e-7);

// Closed jump moments for pure powers:
//   neg_power: ∫ K_z (x^{-rho}) mu(dz) = c(-rho) rho (rho+1) x^{-alpha-rho}, rho > 0
//   pos_power: ∫ K_z (x^{ rho}) mu(dz) = rho (rho-1) c(rho) x^{rho-alpha}, 0 < rho < alpha, rho != 1
double k_integral_closed_power(const StableMeasure& m, double rho, double x,
                               PowerSign sign);

// The operator of the two-type system applied to tf at (x,y):
//   L g = a1 x^th1 y^k1 g_x + a2 y^th2 x^k2 g_y
//       - b10 x^r10 g_x + b11 x^r11 g_xx + b12 x^r12 ∫K^1 g dmu1
//       - b20 y^r20 g_y + b21 y^r21 g_yy + b22 y^r22 ∫K^2 g dmu2.
// closed mode serves the families with closed jump terms (PowerInverse,
// PowerInverseWeighted, LogType, LinearCap); mixed families go through the
// numeric K-integrals unless their jump coefficients are zero. automatic
// picks closed when available.
double apply_generator(const TestFunction& tf, double x, double y,
                       const ModelParams& p, GenMode mode);

struct GridSpec {
  int nx = 64, ny = 64;
  double lo_factor = 1e-6;  // grid spans [c*lo_factor, c] per axis, log-spaced
};

struct BoundWitness {
  double x = 0, y = 0;
  double lhs = 0;  // L g at the witness
  double rhs = 0;  // g at the witness
};

struct BoundReport {
  bool satisfied = false;
  double constant = 0;  // minimal C (upper) or maximal d (lower) on the grid
  BoundWitness witness;
  GridSpec grid;
  double box = 0;
  Direction direction = Direction::upper;
  std::string note;
};

//

// Evaluates L g and g on the log grid over (0,c]^2.
//   upper: minimal C with L g <= C g at every node (Prop.-style non-extinction
//          certificate; g must be positive on the box).
//   lower: maximal d with L g >= d g at every node where g > 0; satisfied
//          means d > 0.
// Violations are data, not errors.
BoundReport verify_drift_bound(const TestFunction& tf, const ModelParams& p,
                               double box_c, const GridSpec& grid,
                               Direction direction,
                               GenMode mode = GenMode::automatic);

// Scan for the cap v and margin d of the linear-cap certificate: over the box
// (0,v]^2 the two frozen inequalities
//   (b1/2)(1-rho)[1 ^ c1(rho)] x^{r1+1-th1} - a1 y^{k1} >= 0
//   (b1/2) rho (1-rho)[1 ^ c1(rho)] x^{rho+r1} - a2     >= d v
// must hold; v halves until they do. Requires r1 <= th1-1, r1 < 0.
struct LinearCapFixture {
  double v, d, rho;
};
std::optional<LinearCapFixture> scan_linearcap_box(const ModelParams& p,
                                                   const DerivedParams& dp,
                                                   double rho,
                                                   int max_halvings = 40);

}  // namespace csbp
