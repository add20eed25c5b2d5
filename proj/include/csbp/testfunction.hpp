#pragma once

#include <memory>
#include <string>
#include <variant>

#include "csbp/errors.hpp"

namespace csbp {

// Lyapunov candidate families. Value and first/second partials are all
// analytic; nothing here uses finite differences.

// g = x^{-rho1} + y^{-rho2}
struct PowerInverse {
  double rho1, rho2;
};

// g = delta0 x^{-rho1} + y^{-rho2}
struct PowerInverseWeighted {
  double delta0, rho1, rho2;
};

// g = (delta0+1) ln n + delta0 ln(1/x) + ln(1/y), defined on (0,n)^2 only
struct LogType {
  double delta0, n;
};

// g = v - x^rho - y, rho in (0,1)
struct LinearCap {
  double v, rho;
};

// h = -(delta0 x^rho1 + y^rho2)^rho, rho1,rho2 >= 1, rho in (0,1)
struct NegPowerSum {
  double rho1, rho2, rho, delta0 = 1.0;
};

// h = -[x^rho1 + htilde(y)]^rho with the smoothed linear htilde below
struct SmoothedY {
  double rho1, rho, eps;
};

// h = -[(x + y^delta)^rho1 + htilde(y)]^rho, rho1 in (0,1), delta > 1
struct SmoothedXY {
  double rho1, rho, eps, delta;
};

// h = -hhat^rho with hhat switching among four cases on theta1, theta2:
//   both > 0 : x^{1-theta1} + y^{1-theta2}
//   theta2=0 : x^{1-theta1} + htilde(y)
//   theta1=0 : y^{1-theta2} + htilde(x)
//   both = 0 : htilde(x) + htilde(y)
struct ThetaFamily {
  double theta1, theta2, rho, eps;
};

struct ShiftedCap;

using TestFunction =
    std::variant<PowerInverse, PowerInverseWeighted, LogType, LinearCap,
                 NegPowerSum, SmoothedY, SmoothedXY, ThetaFamily, ShiftedCap>;

// g = min(|h(c,0)|, |h(0,c)|) + h(x,y), the capped form fed to the extinction
// criterion; inner must extend continuously to the axes (the h-families above
// do, the inverse-power ones do not).
struct ShiftedCap {
  double c;
  std::shared_ptr<TestFunction> inner;
};

struct Eval {
  double g, gx, gy, gxx, gyy;
};

Eval eval(const TestFunction& tf, double x, double y);

struct HtildeEval {
  double value, d1, d2;
};

// htilde(y) = y - (1+eps)^{-1} y^{1+eps} (1+y)^{-eps} and its first two
// derivatives; htilde''(y) = -eps y^{eps-1} (1+y)^{-2-eps}
HtildeEval htilde(double y, double eps);

// largest c0 (grid scan, halving) with htilde >= y/2, htilde' in [1/2,1] and
// -htilde'' >= (eps/2) y^{eps-1} holding on (0, 2*c0]
double htilde_c0(double eps, int grid = 200);

// limiting value of the family on the axes (x=0 or y=0 allowed); DomainError
// for families that blow up there
double boundary_value(const TestFunction& tf, double x, double y);

std::string family_name(const TestFunction& tf);

}  // namespace csbp
