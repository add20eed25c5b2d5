#include "csbp/testfunction.hpp"

#include <algorithm>
#include <cmath>

namespace csbp {

HtildeEval htilde(double y, double eps) {
  if (!(y > 0)) throw DomainError("htilde: y > 0");
  if (!(eps > 0 && eps < 1)) throw DomainError("htilde: eps in (0,1)");
  const double ratio = std::pow(y / (1.0 + y), eps);  // y^eps (1+y)^{-eps}
  const double v = y - y / (1.0 + eps) * ratio;
  const double d1 =
      1.0 - ratio + eps / (1.0 + eps) * ratio * y / (1.0 + y);
  const double d2 = -eps * std::pow(y, eps - 1.0) * std::pow(1.0 + y, -2.0 - eps);
  return {v, d1, d2};
}

double htilde_c0(double eps, int grid) {
  // halve y0 until the three bounds of the small-y regime hold on a log grid
  for (double y0 = 1.0; y0 > 1e-12; y0 *= 0.5) {
    bool ok = true;
    for (int i = 0; i < grid && ok; ++i) {
      double y = y0 * std::pow(1e-6, static_cast<double>(i) / (grid - 1));
      auto h = htilde(y, eps);
      ok = h.value >= 0.5 * y && h.d1 >= 0.5 && h.d1 <= 1.0 &&
           -h.d2 >= 0.5 * eps * std::pow(y, eps - 1.0);
    }
    if (ok) return 0.5 * y0;
  }
  throw DomainError("htilde_c0: no interval found");
}

namespace {

struct Ev {
  // value and partials of the inner function s(x,y) for the -s^rho families
  double s, sx, sy, sxx, syy;
};

Eval chain_neg_power(const Ev& e, double rho) {
  // h = -s^rho
  const double srm1 = std::pow(e.s, rho - 1.0);
  const double srm2 = srm1 / e.s;
  Eval out;
  out.g = -std::pow(e.s, rho);
  out.gx = -rho * srm1 * e.sx;
  out.gy = -rho * srm1 * e.sy;
  out.gxx = -rho * (rho - 1.0) * srm2 * e.sx * e.sx - rho * srm1 * e.sxx;
  out.gyy = -rho * (rho - 1.0) * srm2 * e.sy * e.sy - rho * srm1 * e.syy;
  return out;
}

void check_pos(double x, double y) {
  if (!(x > 0) || !(y > 0)) throw DomainError("eval: (x,y) must be positive");
}

Ev theta_hat(const ThetaFamily& f, double x, double y) {
  Ev e{0, 0, 0, 0, 0};
  auto add_power = [](Ev& a, double t, double u, bool on_x) {
    // contributes u^{1-t} in the given coordinate
    double p = 1.0 - t;
    double v = std::pow(u, p);
    double d1 = p * std::pow(u, p - 1.0);
    double d2 = p * (p - 1.0) * std::pow(u, p - 2.0);
    a.s += v;
    (on_x ? a.sx : a.sy) += d1;
    (on_x ? a.sxx : a.syy) += d2;
  };
  auto add_htilde = [&](Ev& a, double u, bool on_x) {
    auto h = htilde(u, f.eps);
    a.s += h.value;
    (on_x ? a.sx : a.sy) += h.d1;
    (on_x ? a.sxx : a.syy) += h.d2;
  };
  if (f.theta1 > 0)
    add_power(e, f.theta1, x, true);
  else
    add_htilde(e, x, true);
  if (f.theta2 > 0)
    add_power(e, f.theta2, y, false);
  else
    add_htilde(e, y, false);
  return e;
}

struct EvalVisitor {
  double x, y;

  Eval operator()(const PowerInverse& f) const {
    check_pos(x, y);
    Eval e;
    e.g = std::pow(x, -f.rho1) + std::pow(y, -f.rho2);
    e.gx = -f.rho1 * std::pow(x, -f.rho1 - 1.0);
    e.gy = -f.rho2 * std::pow(y, -f.rho2 - 1.0);
    e.gxx = f.rho1 * (f.rho1 + 1.0) * std::pow(x, -f.rho1 - 2.0);
    e.gyy = f.rho2 * (f.rho2 + 1.0) * std::pow(y, -f.rho2 - 2.0);
    return e;
  }

  Eval operator()(const PowerInverseWeighted& f) const {
    check_pos(x, y);
    Eval e;
    e.g = f.delta0 * std::pow(x, -f.rho1) + std::pow(y, -f.rho2);
    e.gx = -f.delta0 * f.rho1 * std::pow(x, -f.rho1 - 1.0);
    e.gy = -f.rho2 * std::pow(y, -f.rho2 - 1.0);
    e.gxx = f.delta0 * f.rho1 * (f.rho1 + 1.0) * std::pow(x, -f.rho1 - 2.0);
    e.gyy = f.rho2 * (f.rho2 + 1.0) * std::pow(y, -f.rho2 - 2.0);
    return e;
  }

  Eval operator()(const LogType& f) const {
    check_pos(x, y);
    if (!(x < f.n && y < f.n))
      throw DomainError("eval: LogType is defined on (0,n)^2 only");
    Eval e;
    e.g = (f.delta0 + 1.0) * std::log(f.n) - f.delta0 * std::log(x) - std::log(y);
    e.gx = -f.delta0 / x;
    e.gy = -1.0 / y;
    e.gxx = f.delta0 / (x * x);
    e.gyy = 1.0 / (y * y);
    return e;
  }

  Eval operator()(const LinearCap& f) const {
    check_pos(x, y);
    Eval e;
    e.g = f.v - std::pow(x, f.rho) - y;
    e.gx = -f.rho * std::pow(x, f.rho - 1.0);
    e.gy = -1.0;
    e.gxx = -f.rho * (f.rho - 1.0) * std::pow(x, f.rho - 2.0);
    e.gyy = 0.0;
    return e;
  }

  Eval operator()(const NegPowerSum& f) const {
    check_pos(x, y);
    Ev e;
    e.s = f.delta0 * std::pow(x, f.rho1) + std::pow(y, f.rho2);
    e.sx = f.delta0 * f.rho1 * std::pow(x, f.rho1 - 1.0);
    e.sy = f.rho2 * std::pow(y, f.rho2 - 1.0);
    e.sxx = f.delta0 * f.rho1 * (f.rho1 - 1.0) * std::pow(x, f.rho1 - 2.0);
    e.syy = f.rho2 * (f.rho2 - 1.0) * std::pow(y, f.rho2 - 2.0);
    return chain_neg_power(e, f.rho);
  }

  Eval operator()(const SmoothedY& f) const {
    check_pos(x, y);
    auto ht = htilde(y, f.eps);
    Ev e;
    e.s = std::pow(x, f.rho1) + ht.value;
    e.sx = f.rho1 * std::pow(x, f.rho1 - 1.0);
    e.sy = ht.d1;
    e.sxx = f.rho1 * (f.rho1 - 1.0) * std::pow(x, f.rho1 - 2.0);
    e.syy = ht.d2;
    return chain_neg_power(e, f.rho);
  }

  Eval operator()(const SmoothedXY& f) const {
    check_pos(x, y);
    if (!(f.delta > 1)) throw DomainError("SmoothedXY: delta > 1");
    auto ht = htilde(y, f.eps);
    const double w = x + std::pow(y, f.delta);
    const double wy = f.delta * std::pow(y, f.delta - 1.0);
    const double wyy = f.delta * (f.delta - 1.0) * std::pow(y, f.delta - 2.0);
    Ev e;
    e.s = std::pow(w, f.rho1) + ht.value;
    e.sx = f.rho1 * std::pow(w, f.rho1 - 1.0);
    e.sy = f.rho1 * std::pow(w, f.rho1 - 1.0) * wy + ht.d1;
    e.sxx = f.rho1 * (f.rho1 - 1.0) * std::pow(w, f.rho1 - 2.0);
    e.syy = f.rho1 * (f.rho1 - 1.0) * std::pow(w, f.rho1 - 2.0) * wy * wy +
            f.rho1 * std::pow(w, f.rho1 - 1.0) * wyy + ht.d2;
    return chain_neg_power(e, f.rho);
  }

  Eval operator()(const ThetaFamily& f) const {
    check_pos(x, y);
    if (!(f.theta1 >= 0 && f.theta1 < 1 && f.theta2 >= 0 && f.theta2 < 1))
      throw DomainError("ThetaFamily: theta_i in [0,1)");
    return chain_neg_power(theta_hat(f, x, y), f.rho);
  }

  Eval operator()(const ShiftedCap& f) const {
    if (!f.inner) throw DomainError("ShiftedCap: missing inner function");
    Eval e = eval(*f.inner, x, y);
    double hc0 = boundary_value(*f.inner, f.c, 0.0);
    double h0c = boundary_value(*f.inner, 0.0, f.c);
    e.g += std::min(std::fabs(hc0), std::fabs(h0c));
    return e;
  }
};

// value of the -s^rho families with one argument allowed to touch 0
struct BoundaryVisitor {
  double x, y;

  double htilde_or_zero(double u, double eps) const {
    return u <= 0 ? 0.0 : htilde(u, eps).value;
  }

  double operator()(const NegPowerSum& f) const {
    double s = f.delta0 * std::pow(x, f.rho1) + std::pow(y, f.rho2);
    return -std::pow(s, f.rho);
  }
  double operator()(const SmoothedY& f) const {
    double s = std::pow(x, f.rho1) + htilde_or_zero(y, f.eps);
    return -std::pow(s, f.rho);
  }
  double operator()(const SmoothedXY& f) const {
    double s = std::pow(x + std::pow(y, f.delta), f.rho1) + htilde_or_zero(y, f.eps);
    return -std::pow(s, f.rho);
  }
  double operator()(const ThetaFamily& f) const {
    double sx = f.theta1 > 0 ? std::pow(x, 1.0 - f.theta1) : htilde_or_zero(x, f.eps);
    double sy = f.theta2 > 0 ? std::pow(y, 1.0 - f.theta2) : htilde_or_zero(y, f.eps);
    return -std::pow(sx + sy, f.rho);
  }
  double operator()(const LinearCap& f) const {
    return f.v - std::pow(x, f.rho) - y;
  }
  double operator()(const ShiftedCap& f) const {
    return boundary_value(*f.inner, x, y);
  }
  template <class Other>
  double operator()(const Other&) const {
    throw DomainError("boundary_value: family diverges on the axes");
  }
};

struct NameVisitor {
  std::string operator()(const PowerInverse&) const { return "PowerInverse"; }
  std::string operator()(const PowerInverseWeighted&) const { return "PowerInverseWeighted"; }
  std::string operator()(const LogType&) const { return "LogType"; }
  std::string operator()(const LinearCap&) const { return "LinearCap"; }
  std::string operator()(const NegPowerSum&) const { return "NegPowerSum"; }
  std::string operator()(const SmoothedY&) const { return "SmoothedY"; }
  std::string operator()(const SmoothedXY&) const { return "SmoothedXY"; }
  std::string operator()(const ThetaFamily&) const { return "ThetaFamily"; }
  std::string operator()(const ShiftedCap&) const { return "ShiftedCap"; }
};

}  // namespace

Eval eval(const TestFunction& tf, double x, double y) {
  return std::visit(EvalVisitor{x, y}, tf);
}

double boundary_value(const TestFunction& tf, double x, double y) {
  if (x < 0 || y < 0) throw DomainError("boundary_value: nonnegative arguments");
  return std::visit(BoundaryVisitor{x, y}, tf);
}

std::string family_name(const TestFunction& tf) {
  return std::visit(NameVisitor{}, tf);
}

}  // namespace csbp
