#include "csbp/stable.hpp"

#include <cmath>

#include "csbp/kernels.hpp"
#include "csbp/quadrature.hpp"

namespace csbp {

StableMeasure::StableMeasure(double alpha_) : alpha(alpha_) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha in (1,2)");
  c_norm = alpha * (alpha - 1.0) /
           (std::tgamma(alpha) * std::tgamma(2.0 - alpha));
}

double StableMeasure::density(double z) const {
  if (!(z > 0)) throw DomainError("density: z > 0");
  return c_norm * std::pow(z, -1.0 - alpha);
}

double StableMeasure::tail_mass(double eps) const {
  if (!(eps > 0)) throw DomainError("tail_mass: eps > 0");
  return c_norm * std::pow(eps, -alpha) / alpha;
}

double StableMeasure::mean_above(double eps) const {
  if (!(eps > 0)) throw DomainError("mean_above: eps > 0");
  return c_norm * std::pow(eps, 1.0 - alpha) / (alpha - 1.0);
}

double StableMeasure::var_below(double eps) const {
  if (!(eps > 0)) throw DomainError("var_below: eps > 0");
  return c_norm * std::pow(eps, 2.0 - alpha) / (2.0 - alpha);
}

double StableMeasure::c_rho(double rho) const {
  if (!(rho < alpha)) throw DomainError("c_rho: rho < alpha required");
  // Gamma(2-rho) poles sit at rho in {2,3,...}; rho < alpha < 2 keeps us left
  // of all of them, but guard the approach to 2 anyway.
  if (rho > 2.0 - 1e-6) throw DomainError("c_rho: rho too close to Gamma pole at 2");
  return std::tgamma(alpha - rho) / (std::tgamma(alpha) * std::tgamma(2.0 - rho));
}

double StableMeasure::laplace_exponent(double u) const {
  if (!(u >= 0)) throw DomainError("laplace_exponent: u >= 0");
  if (u == 0.0) return 0.0;
  return std::pow(u, alpha) / std::tgamma(alpha);
}

double sample_tail_from_u(const StableMeasure& m, double eps, double u) {
  if (!(eps > 0)) throw DomainError("sample_tail: eps > 0");
  return eps * std::pow(u, -1.0 / m.alpha);
}

double sample_tail(const StableMeasure& m, double eps, RngStream& rng) {
  return sample_tail_from_u(m, eps, rng.next_double());
}

JumpDriver::JumpDriver(const StableMeasure& m_, const CutoffScheme& c_)
    : m(m_), cut(c_) {
  if (!(cut.eps_jump > 0)) throw DomainError("eps_jump > 0");
  tmass = m.tail_mass(cut.eps_jump);
  mabove = m.mean_above(cut.eps_jump);
  sd_small = std::sqrt(m.var_below(cut.eps_jump));
}

double JumpDriver::sample(double lambda, double dt, RngStream& rng) const {
  if (!(dt > 0)) throw DomainError("sample_compensated_increment: dt > 0");
  if (lambda < 0) throw DomainError("sample_compensated_increment: lambda >= 0");
  if (lambda == 0.0) return 0.0;
  const double ldt = lambda * dt;
  const long k = rng.next_poisson(ldt * tmass);
  const double sum = kernels::pareto_power_sum(rng, k, -1.0 / m.alpha);
  double dj = cut.eps_jump * sum - ldt * mabove;
  if (cut.gaussian_smalljump)
    dj += std::sqrt(ldt) * sd_small * rng.next_normal();
  return dj;
}

double sample_compensated_increment(const StableMeasure& m, double lambda,
                                    double dt, const CutoffScheme& scheme,
                                    RngStream& rng) {
  return JumpDriver(m, scheme).sample(lambda, dt, rng);
}

double power_increment_reg(double rho, double z) {
  if (z < 1e-4) {
    // binomial series from the quadratic term on; converges fast for z <= 1e-4
    double term = 0.5 * rho * (rho - 1.0) * z * z;
    double sum = term;
    for (int k = 3; k <= 10; ++k) {
      term *= (rho - (k - 1)) * z / k;
      sum += term;
      if (std::fabs(term) < 1e-30 * std::fabs(sum)) break;
    }
    return sum;
  }
  return std::expm1(rho * std::log1p(z)) - rho * z;
}

namespace {

// e^{-w} - 1 + w without cancellation
double exp_increment_reg(double w) {
  if (w < 1e-4) {
    double term = 0.5 * w * w;
    double sum = term;
    for (int k = 3; k <= 10; ++k) {
      term *= -w / k;
      sum += term;
      if (std::fabs(term) < 1e-30 * std::fabs(sum)) break;
    }
    return sum;
  }
  return std::expm1(-w) + w;
}

}  // namespace

double mu_integral(const StableMeasure& m,
                   const std::function<double(double)>& g_over_z2,
                   const std::function<double(double)>& g, double rel_tol) {
  // ∫_0^1 z^{1-alpha} (g(z)/z^2) dz, weight exponent 1-alpha > -1
  auto small = integrate_power_weight(
      [&](double z) { return g_over_z2(z); }, 1.0 - m.alpha, rel_tol * 0.5);
  // ∫_1^inf z^{-1-alpha} g(z) dz = ∫_0^1 t^{alpha-1} g(1/t) dt
  auto tail = integrate([&](double t) { return std::pow(t, m.alpha - 1.0) * g(1.0 / t); },
                        0.0, 1.0, rel_tol * 0.5);
  if (!small.converged || !tail.converged)
    throw QuadratureFailure("mu_integral: refinement budget exhausted");
  return m.c_norm * (small.value + tail.value);
}

double c_rho_quadrature(const StableMeasure& m, double rho, double rel_tol) {
  if (rho == 0.0 || rho == 1.0)
    throw DomainError("c_rho_quadrature: integral form needs rho outside {0,1}");
  if (!(rho < m.alpha)) throw DomainError("c_rho_quadrature: rho < alpha required");
  // small part through the stable evaluation of (1+z)^rho - 1 - rho z;
  // tail written as ∫_1^inf (1+z)^rho mu - mass and mean closed pieces so the
  // z -> infinity growth never meets a cancellation.
  auto small = integrate_power_weight(
      [&](double z) { return power_increment_reg(rho, z) / (z * z); },
      1.0 - m.alpha, rel_tol * 0.5);
  // ∫_1^inf (1+z)^rho z^{-1-alpha} dz = ∫_0^1 (1+t)^rho t^{alpha-1-rho} dt
  auto tailA = integrate_power_weight(
      [&](double t) { return std::pow(1.0 + t, rho); }, m.alpha - 1.0 - rho,
      rel_tol * 0.5);
  if (!small.converged || !tailA.converged)
    throw QuadratureFailure("c_rho_quadrature: refinement budget exhausted");
  double tail = tailA.value - 1.0 / m.alpha - rho / (m.alpha - 1.0);
  double integral = m.c_norm * (small.value + tail);
  return integral / (rho * (rho - 1.0));
}

double laplace_exponent_quadrature(const StableMeasure& m, double u,
                                   double rel_tol) {
  if (!(u >= 0)) throw DomainError("laplace_exponent_quadrature: u >= 0");
  if (u == 0.0) return 0.0;
  // small part through the regularized integrand; on the tail the -1 and +uz
  // pieces integrate against z^{-1-alpha} in elementary closed form and the
  // exponential part is smooth after z -> 1/t
  auto small = integrate_power_weight(
      [&](double z) { return exp_increment_reg(u * z) / (z * z); },
      1.0 - m.alpha, rel_tol * 0.5);
  auto tailE = integrate(
      [&](double t) { return std::pow(t, m.alpha - 1.0) * std::exp(-u / t); },
      0.0, 1.0, rel_tol * 0.5);
  if (!small.converged || !tailE.converged)
    throw QuadratureFailure("laplace_exponent_quadrature: refinement budget exhausted");
  double tail = tailE.value - 1.0 / m.alpha + u / (m.alpha - 1.0);
  return m.c_norm * (small.value + tail);
}

double laplace_exponent_truncated(const StableMeasure& m, double u,
                                  const CutoffScheme& scheme, double rel_tol) {
  const double eps = scheme.eps_jump;
  // ∫_eps^inf (e^{-uz}-1+uz) mu(dz); no singularity, but keep the stable
  // integrand since eps can be tiny
  double hi = std::max(1.0, eps);
  auto mid = integrate(
      [&](double z) { return exp_increment_reg(u * z) * m.c_norm * std::pow(z, -1.0 - m.alpha); },
      eps, hi, rel_tol * 0.5);
  // past hi the -1 and +uz pieces are tail_mass and mean_above shaped
  // elementary integrals; the exponential part is smooth after z = hi/t
  auto tailE = integrate(
      [&](double t) {
        return std::pow(t, m.alpha - 1.0) * std::exp(-u * hi / t);
      },
      0.0, 1.0, rel_tol * 0.5);
  if (!mid.converged || !tailE.converged)
    throw QuadratureFailure("laplace_exponent_truncated: refinement budget exhausted");
  double tail = m.c_norm * std::pow(hi, -m.alpha) *
                (tailE.value - 1.0 / m.alpha + u * hi / (m.alpha - 1.0));
  double psi = mid.value + tail;
  if (scheme.gaussian_smalljump) psi += 0.5 * u * u * m.var_below(eps);
  return psi;
}

}  // namespace csbp
