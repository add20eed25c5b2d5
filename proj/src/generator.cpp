#include "csbp/generator.hpp"

#include <cmath>
#include <limits>

#include "csbp/quadrature.hpp"

namespace csbp {

namespace {

double second_partial(const TestFunction& tf, double x, double y, Coord c,
                      double offset) {
  Eval e = c == Coord::X ? eval(tf, x + offset, y) : eval(tf, x, y + offset);
  return c == Coord::X ? e.gxx : e.gyy;
}

double value_shifted(const TestFunction& tf, double x, double y, Coord c,
                     double z) {
  Eval e = c == Coord::X ? eval(tf, x + z, y) : eval(tf, x, y + z);
  return e.g;
}

}  // namespace

double k_integral_numeric(const TestFunction& tf, double x, double y,
                          Coord coord, const StableMeasure& m, double rel_tol) {
  const Eval at = eval(tf, x, y);
  const double g0 = at.g;
  const double gd = coord == Coord::X ? at.gx : at.gy;
  const double zc = coord == Coord::X ? x : y;

  // Three regions. Below the coordinate value the difference quotient would
  // cancel catastrophically, so the Taylor form z^2 ∫ g''(.+zu)(1-u)du is
  // integrated there (the inner integrand is smooth because zu <= zc). From
  // zc to 1 the direct K_z evaluation is well conditioned, and past 1 the
  // substitution z = 1/t maps the tail onto (0,1].
  const double a = std::min(zc, 1.0);
  // absolute floor so integrands that vanish identically (affine dependence)
  // settle instead of refining forever against a zero total
  const double gdd0 = std::fabs(coord == Coord::X ? at.gxx : at.gyy);
  const double floor_scale =
      std::fabs(g0) + std::fabs(gd) * (zc + 1.0) + gdd0 * zc * zc + 1e-280;
  const double abs_tol = 1e-12 * floor_scale;

  auto inner = [&](double z) {
    auto r = integrate(
        [&](double u) { return second_partial(tf, x, y, coord, z * u) * (1.0 - u); },
        0.0, 1.0, rel_tol * 0.1, abs_tol, 4000);
    if (!r.converged) throw QuadratureFailure("k_integral_numeric: inner Taylor integral");
    return r.value;
  };
  // ∫_0^a z^{1-alpha} inner(z) dz rescaled to the unit interval
  auto small = integrate_power_weight([&](double t) { return inner(a * t); },
                                      1.0 - m.alpha, rel_tol * 0.3, 40000);
  if (!small.converged && small.abs_err > abs_tol)
    throw QuadratureFailure("k_integral_numeric: small-jump part did not converge");
  double total = std::pow(a, 2.0 - m.alpha) * small.value;

  auto k_direct = [&](double z) {
    return value_shifted(tf, x, y, coord, z) - g0 - gd * z;
  };
  if (a < 1.0) {
    auto mid = integrate(
        [&](double z) { return std::pow(z, -1.0 - m.alpha) * k_direct(z); }, a,
        1.0, rel_tol * 0.3, abs_tol, 40000);
    if (!mid.converged)
      throw QuadratureFailure("k_integral_numeric: mid part did not converge");
    total += mid.value;
  }

  auto tail = integrate(
      [&](double t) { return std::pow(t, m.alpha - 1.0) * k_direct(1.0 / t); },
      0.0, 1.0, rel_tol * 0.3, abs_tol, 40000);
  if (!tail.converged)
    throw QuadratureFailure("k_integral_numeric: tail part did not converge");
  total += tail.value;
  return m.c_norm * total;
}

double k_integral_closed_power(const StableMeasure& m, double rho, double x,
                               PowerSign sign) {
  if (sign == PowerSign::neg_power) {
    if (!(rho > 0)) throw DomainError("k_integral_closed_power: neg_power needs rho > 0");
    return m.c_rho(-rho) * rho * (rho + 1.0) * std::pow(x, -m.alpha - rho);
  }
  if (!(rho > 0 && rho < m.alpha) || rho == 1.0)
    throw DomainError("k_integral_closed_power: pos_power needs 0 < rho < alpha, rho != 1");
  return rho * (rho - 1.0) * m.c_rho(rho) * std::pow(x, rho - m.alpha);
}

namespace {

// closed jump term for the families whose jumped-coordinate dependence is a
// pure power (or a logarithm, whose mu-moment ∫[z - ln(1+z)] mu(dz) is exactly 1)
std::optional<double> closed_k(const TestFunction& tf, Coord c, double x,
                               double y, const StableMeasure& m) {
  const double arg = c == Coord::X ? x : y;
  if (const auto* f = std::get_if<PowerInverse>(&tf)) {
    double rho = c == Coord::X ? f->rho1 : f->rho2;
    return k_integral_closed_power(m, rho, arg, PowerSign::neg_power);
  }
  if (const auto* f = std::get_if<PowerInverseWeighted>(&tf)) {
    double rho = c == Coord::X ? f->rho1 : f->rho2;
    double w = c == Coord::X ? f->delta0 : 1.0;
    return w * k_integral_closed_power(m, rho, arg, PowerSign::neg_power);
  }
  if (const auto* f = std::get_if<LogType>(&tf)) {
    double w = c == Coord::X ? f->delta0 : 1.0;
    return w * std::pow(arg, -m.alpha);
  }
  if (const auto* f = std::get_if<LinearCap>(&tf)) {
    if (c == Coord::Y) return 0.0;  // affine in y, K annihilates it
    return -k_integral_closed_power(m, f->rho, arg, PowerSign::pos_power);
  }
  if (const auto* f = std::get_if<ShiftedCap>(&tf)) return closed_k(*f->inner, c, x, y, m);
  return std::nullopt;
}

}  // namespace

double apply_generator(const TestFunction& tf, double x, double y,
                       const ModelParams& p, GenMode mode) {
  const Eval e = eval(tf, x, y);
  double L = p.a1 * pow00(x, p.theta1) * pow00(y, p.kappa1) * e.gx +
             p.a2 * pow00(y, p.theta2) * pow00(x, p.kappa2) * e.gy -
             p.b10 * pow00(x, p.r10) * e.gx + p.b11 * pow00(x, p.r11) * e.gxx -
             p.b20 * pow00(y, p.r20) * e.gy + p.b21 * pow00(y, p.r21) * e.gyy;
  auto jump_term = [&](Coord c, double b, double r, double alpha) {
    if (b == 0.0) return 0.0;
    StableMeasure m(alpha);
    double k;
    if (mode == GenMode::numeric) {
      k = k_integral_numeric(tf, x, y, c, m);
    } else {
      auto closed = closed_k(tf, c, x, y, m);
      if (closed) {
        k = *closed;
      } else if (mode == GenMode::automatic) {
        k = k_integral_numeric(tf, x, y, c, m);
      } else {
        throw DomainError("apply_generator: no closed-form jump term for " +
                          family_name(tf));
      }
    }
    return b * pow00(c == Coord::X ? x : y, r) * k;
  };
  L += jump_term(Coord::X, p.b12, p.r12, p.alpha1);
  L += jump_term(Coord::Y, p.b22, p.r22, p.alpha2);
  return L;
}

BoundReport verify_drift_bound(const TestFunction& tf, const ModelParams& p,
                               double box_c, const GridSpec& grid,
                               Direction direction, GenMode mode) {
  BoundReport rep;
  rep.grid = grid;
  rep.box = box_c;
  rep.direction = direction;
  if (!(box_c > 0)) throw DomainError("verify_drift_bound: box c > 0");

  const double llo = std::log(box_c * grid.lo_factor);
  const double lhi = std::log(box_c);
  auto node = [&](int i, int n) {
    return n == 1 ? box_c : std::exp(llo + (lhi - llo) * i / (n - 1.0));
  };

  bool first = true;
  double best = 0;  // max ratio (upper) or min ratio (lower)
  BoundWitness w;
  long used = 0;
  for (int i = 0; i < grid.nx; ++i) {
    double x = node(i, grid.nx);
    for (int j = 0; j < grid.ny; ++j) {
      double y = node(j, grid.ny);
      double g = eval(tf, x, y).g;
      double L = apply_generator(tf, x, y, p, mode);
      if (!std::isfinite(g) || !std::isfinite(L)) {
        rep.satisfied = false;
        rep.witness = {x, y, L, g};
        rep.note = "non-finite evaluation at a grid node";
        return rep;
      }
      if (direction == Direction::upper) {
        if (!(g > 0)) {
          rep.satisfied = false;
          rep.witness = {x, y, L, g};
          rep.note = "upper bound requires g > 0 on the box";
          return rep;
        }
        double ratio = L / g;
        if (first || ratio > best) {
          best = ratio;
          w = {x, y, L, g};
          first = false;
        }
        ++used;
      } else {
        if (!(g > 0)) continue;  // the cap makes g <= 0 near the outer corner
        double ratio = L / g;
        if (first || ratio < best) {
          best = ratio;
          w = {x, y, L, g};
          first = false;
        }
        ++used;
      }
    }
  }
  if (used == 0) {
    rep.satisfied = false;
    rep.note = "no grid node with g > 0";
    return rep;
  }
  rep.constant = best;
  rep.witness = w;
  if (direction == Direction::upper) {
    rep.satisfied = std::isfinite(best);
  } else {
    rep.satisfied = best > 0;
    if (!rep.satisfied) rep.note = "L g < d g for every positive d at the witness";
  }
  return rep;
}

std::optional<LinearCapFixture> scan_linearcap_box(const ModelParams& p,
                                                   const DerivedParams& dp,
                                                   double rho,
                                                   int max_halvings) {
  if (!(rho > 0 && rho < 1 && rho < -dp.r1)) return std::nullopt;
  StableMeasure m1(p.alpha1);
  const double cmin = std::min(1.0, m1.c_rho(rho));
  const double lead = 0.5 * dp.b1 * (1.0 - rho) * cmin;
  double v = 0.5;
  for (int it = 0; it < max_halvings; ++it, v *= 0.5) {
    // both exponents are <= 0 on the fixture's regime, so x = v is the worst node
    double cond1 = lead * std::pow(v, dp.r1 + 1.0 - p.theta1) -
                   p.a1 * std::pow(v, p.kappa1);
    double lhs2 = lead * rho * std::pow(v, rho + dp.r1) - p.a2;
    if (cond1 >= 0 && lhs2 > 0) return LinearCapFixture{v, lhs2 / v, rho};
  }
  return std::nullopt;
}

}  // namespace csbp
