#pragma once

#include <cmath>
#include <utility>

#include "csbp/errors.hpp"

namespace csbp {

// The 20 scalar coefficients of the two-type system plus the stability
// indices of the two jump measures.
struct ModelParams {
  double a1 = 1, a2 = 1;            // interaction strengths, > 0
  double theta1 = 0, theta2 = 0;    // self exponents in the interaction terms
  double kappa1 = 1, kappa2 = 1;    // cross exponents, > 0
  double b10 = 0, b11 = 1, b12 = 0; // drift / diffusion / jump coefficients, X
  double b20 = 0, b21 = 1, b22 = 0; // same for Y
  double r10 = 0, r11 = 1, r12 = 0; // channel exponents, X
  double r20 = 0, r21 = 1, r22 = 0; // same for Y
  double alpha1 = 1.5, alpha2 = 1.5; // stability indices, in (1,2)
};

// Dominant near-zero exponents r_i = min_j { r_ij - varrho_ij : b_ij != 0 }
// and the aggregated coefficients b_i summed over the channels attaining the
// minimum. varrho_i0 = 1, varrho_i1 = 2, varrho_i2 = alpha_i.
struct DerivedParams {
  double r1 = 0, r2 = 0;
  double b1 = 0, b2 = 0;
};

struct State {
  double x = 0, y = 0;
};

// exponent 0 means a state-independent coefficient, so 0^0 is 1 here
inline double pow00(double base, double expo) {
  if (expo == 0.0) return 1.0;
  return std::pow(base, expo);
}

inline double varrho(const ModelParams& p, int i, int j) {
  if (j == 0) return 1.0;
  if (j == 1) return 2.0;
  return i == 1 ? p.alpha1 : p.alpha2;
}

// Returns p unchanged if every invariant holds, otherwise throws
// ConstraintViolation naming the violated inequality.
ModelParams validate(const ModelParams& p);

// tie_tol widens the exact-minimum comparison when summing b_i; the default 0
// keeps exact double comparison (varrho_i2 = alpha_i is irrational in general,
// so accidental ties do not happen unless constructed).
DerivedParams derive_exponents(const ModelParams& p, double tie_tol = 0.0);

// dx_rate = a1 x^th1 y^k1 - b10 x^r10 and the symmetric rate for y
std::pair<double, double> drift(const State& s, const ModelParams& p);

// sigma_x = b11 sqrt(2 x^r11), sigma_y symmetric
std::pair<double, double> diffusion_coeff(const State& s, const ModelParams& p);

// lambda_x = b12 x^r12, the thinning scale multiplying mu_1, lambda_y symmetric
std::pair<double, double> jump_scale(const State& s, const ModelParams& p);

// swaps the (1*) and (2*) coefficient blocks
ModelParams swap_blocks(const ModelParams& p);

}  // namespace csbp
