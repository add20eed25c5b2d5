#pragma once

#include <string>
#include <vector>

#include "csbp/model.hpp"
#include "csbp/rng.hpp"
#include "csbp/stable.hpp"

namespace csbp {

struct IneqReport {
  std::string lemma;
  long trials_or_grid = 0;
  bool satisfied = false;
  double worst_margin = 0;  // normalized: (lhs-rhs)/max(1,|lhs|,|rhs|)
  double witness_x = 0, witness_y = 0;
  double constant = 0;  // the found c / delta0 / fitted constant, when any
  std::string note;
};

// satisfied means worst_margin >= -1e-12 (slack for float roundoff)
inline bool margin_ok(double m) { return m >= -1e-12; }

enum class YoungVariant { i, ii_le1, ii_gt1, iii };

struct YoungInputs {
  // variant iii only; variants i/ii draw their own random inputs
  double p1 = 1, p2 = 1, p3 = 1, p4 = 1;
  double c1 = 1, c2 = 1, c3 = 1;
};

// (i)   u+v >= p^{1/p} q^{1/q} u^{1/p} v^{1/q} and u/p+v/q >= u^{1/p} v^{1/q}
// (ii)  x^p+y^p >= (x+y)^p for 0<p<=1; x^p+y^p >= 2^{1-p}(x+y)^p for p>1
// (iii) with p3/p1 + p4/p2 > 1, bisects the largest c in (0,1) such that
//       c1 x^{p1} + c2 y^{p2} >= c3 x^{p3} y^{p4} on a log grid over (0,c)^2
IneqReport young_check(YoungVariant variant, const YoungInputs& in, long trials,
                       RngStream& rng);

enum class BoxLemma { L3_2, L7_1 };

struct BoxInputs {
  double r1 = 0, r2 = 0;          // dominant exponents (r2 only for L3_2)
  double theta1 = 0, theta2 = 0;
  double kappa1 = 1, kappa2 = 1;
  double rho1 = 2, rho2 = 2;
  double c1 = 1, c2 = 1, c3 = 1, c4 = 1;  // c4 unused for L3_2
};

// Largest box (0,c]^2 on which the lemma's conclusion holds (bisection with a
// log-grid verification). HypothesisError when (5.20) / (3.6) fails.
//   L7_1: c1 x^{r1+rho1} + c2 y^{r2+rho2} - c3 x^{th1-1+rho1} y^{k1}
//         - c4 y^{th2-1+rho2} x^{k2} >= 0
//   L3_2: c1 y^{th2-1-rho2} x^{k2} + c2 x^{th1-1-rho1} y^{k1} - c3 y^{r2-rho2} >= 0
IneqReport find_box_constant(BoxLemma lemma, const BoxInputs& in,
                             int grid = 48, int bisect_iters = 60);

enum class DeltaLemma { L5_1, L5_2, L5_3 };

struct DeltaInputs {
  double a1 = 1, a2 = 1;
  double b1 = 1, b2 = 1;          // aggregated coefficients
  double theta1 = 0, theta2 = 0;
  double kappa1 = 1, kappa2 = 1;
  double r1 = 0, r2 = 0;
  double rho1 = 2, rho2 = 2;      // aux exponents (5.3 / 5.2)
  double rho = 0.1, eps0 = 0.1;   // 5.2 only
};

// Computes the admissible delta0 interval from the explicit ratio sandwich in
// the respective proof, returns its midpoint and verifies the conclusion on a
// random log-uniform point cloud. HypothesisError when the sandwich is empty
// or a hypothesis fails.
IneqReport find_delta0(DeltaLemma lemma, const DeltaInputs& in, long cloud,
                       RngStream& rng);

enum class KvzMode { lemma_i, lemma_ii };

// ∫_0^inf K(v,z) mu(dz) for K(v,z) = -(v[(1+z)^{rho1}-1]+1)^rho + 1 + z v rho rho1
double kvz_integral(const StableMeasure& m, double rho1, double rho, double v,
                    double rel_tol = 1e-8);

// d_{1,delta} = ∫_0^delta z^2 (1+z)^{rho1-2} mu(dz)
double kvz_d1_delta(const StableMeasure& m, double rho1, double delta,
                    double rel_tol = 1e-9);
// d_{2,delta} = ∫_delta^inf z^2 mu(dz) ∫_0^1 (1+uz)^{rho rho1 - 2} du
double kvz_d2_delta(const StableMeasure& m, double rho1, double rho,
                    double delta, double rel_tol = 1e-9);

// lemma_ii: asserts the lower bound
//   ∫K(v,.)dmu >= rho rho1 (1-rho rho1) c(rho rho1) v^2
//                - rho rho1 (rho1-1) [v(1-v) d_{1,delta} + d_{2,delta} v^rho]
// on the v grid (rho1 > 1, 0 < rho rho1 < 1).
// lemma_i: fits the smallest dtilde1 > 0 with
//   ∫K(v,.)dmu >= rho(1-rho) rho1^2 v^2 d1 - rho rho1 (rho1-1) v dtilde1
// (d1 from its defining quadrature), then verifies on a 3x denser grid.
IneqReport kvz_bounds_check(const StableMeasure& m, double rho1, double rho,
                            const std::vector<double>& v_grid, KvzMode mode,
                            double delta = 8.0);

}  // namespace csbp
