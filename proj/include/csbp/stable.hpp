#pragma once

#include <cstdint>
#include <functional>

#include "csbp/errors.hpp"
#include "csbp/rng.hpp"

namespace csbp {

// Spectrally positive alpha-stable Levy measure
//   mu(dz) = c_norm z^{-1-alpha} dz on (0,inf),
//   c_norm = alpha(alpha-1) / (Gamma(alpha) Gamma(2-alpha)),  alpha in (1,2).
// Small jumps have finite second moment, large jumps finite first moment.
struct StableMeasure {
  double alpha;
  double c_norm;

  explicit StableMeasure(double alpha_);

  double density(double z) const;

  // ∫_eps^inf mu(dz) = c_norm eps^{-alpha} / alpha
  double tail_mass(double eps) const;
  // ∫_eps^inf z mu(dz) = c_norm eps^{1-alpha} / (alpha-1)
  double mean_above(double eps) const;
  // ∫_0^eps z^2 mu(dz) = c_norm eps^{2-alpha} / (2-alpha)
  double var_below(double eps) const;

  // c(rho) = Gamma(alpha-rho) / (Gamma(alpha) Gamma(2-rho)), rho < alpha;
  // for rho outside {0,1} this equals [rho(rho-1)]^{-1} ∫ [(1+z)^rho - 1 - rho z] mu(dz)
  double c_rho(double rho) const;

  // psi(u) = ∫ (e^{-uz} - 1 + uz) mu(dz) = u^alpha / Gamma(alpha)
  double laplace_exponent(double u) const;
};

struct CutoffScheme {
  double eps_jump = 1e-3;        // small-jump truncation level
  bool gaussian_smalljump = true; // matched-variance Gaussian completion
};

// inverse-CDF sample of mu restricted to [eps,inf) and normalized
double sample_tail(const StableMeasure& m, double eps, RngStream& rng);
// same map applied to a caller-supplied uniform (u in (0,1]; u=1 gives eps)
double sample_tail_from_u(const StableMeasure& m, double eps, double u);

// One compensated jump increment over a step with frozen intensity lambda*mu:
// K ~ Poisson(lambda dt tail_mass(eps)), sum of K tail samples, minus the
// compensator lambda dt mean_above(eps), plus (optionally) a centered Gaussian
// with variance lambda dt var_below(eps). Centered either way.
double sample_compensated_increment(const StableMeasure& m, double lambda,
                                    double dt, const CutoffScheme& scheme,
                                    RngStream& rng);

// Same law with the per-(measure,cutoff) constants frozen once; this is what
// the simulator uses in its inner loop.
struct JumpDriver {
  StableMeasure m;
  CutoffScheme cut;
  double tmass, mabove, sd_small;  // sd_small = sqrt(var_below(eps))

  JumpDriver(const StableMeasure& m_, const CutoffScheme& c_);
  double sample(double lambda, double dt, RngStream& rng) const;
};

// quadrature routes (independent of the Gamma closed forms above)

// ∫_0^inf g(z) mu(dz) for g ~ O(z^2) at 0 and o(z^alpha) at infinity.
// The small-jump part is integrated through g_over_z2(z) = g(z)/z^2, which the
// caller must evaluate without cancellation near 0; g itself is used on [1,inf).
double mu_integral(const StableMeasure& m,
                   const std::function<double(double)>& g_over_z2,
                   const std::function<double(double)>& g, double rel_tol);

// Eq.-style quadrature of ∫ [(1+z)^rho - 1 - rho z] mu(dz) / (rho(rho-1))
double c_rho_quadrature(const StableMeasure& m, double rho, double rel_tol = 1e-10);

// quadrature of the defining integral of psi(u)
double laplace_exponent_quadrature(const StableMeasure& m, double u,
                                   double rel_tol = 1e-10);

// truncated-scheme exponent: ∫_eps^inf (e^{-uz}-1+uz) mu(dz), plus
// u^2/2 var_below(eps) when the Gaussian completion is on. Used to quantify
// the cutoff bias of sample_compensated_increment exactly.
double laplace_exponent_truncated(const StableMeasure& m, double u,
                                  const CutoffScheme& scheme,
                                  double rel_tol = 1e-10);

// (1+z)^rho - 1 - rho z without cancellation for small z
double power_increment_reg(double rho, double z);

}  // namespace csbp
