#include "csbp/model.hpp"

#include <algorithm>

namespace csbp {

ModelParams validate(const ModelParams& p) {
  auto require = [](bool ok, const char* name) {
    if (!ok) throw ConstraintViolation(name);
  };
  require(p.a1 > 0, "a1>0");
  require(p.a2 > 0, "a2>0");
  require(p.kappa1 > 0, "kappa1>0");
  require(p.kappa2 > 0, "kappa2>0");
  require(p.theta1 >= 0, "theta1>=0");
  require(p.theta2 >= 0, "theta2>=0");
  require(p.b10 >= 0, "b10>=0");
  require(p.b11 >= 0, "b11>=0");
  require(p.b12 >= 0, "b12>=0");
  require(p.b20 >= 0, "b20>=0");
  require(p.b21 >= 0, "b21>=0");
  require(p.b22 >= 0, "b22>=0");
  require(p.r10 >= 0, "r10>=0");
  require(p.r11 >= 0, "r11>=0");
  require(p.r12 >= 0, "r12>=0");
  require(p.r20 >= 0, "r20>=0");
  require(p.r21 >= 0, "r21>=0");
  require(p.r22 >= 0, "r22>=0");
  require(p.b11 + p.b12 > 0, "b11+b12>0");
  require(p.b21 + p.b22 > 0, "b21+b22>0");
  require(p.alpha1 > 1 && p.alpha1 < 2, "alpha1 in (1,2)");
  require(p.alpha2 > 1 && p.alpha2 < 2, "alpha2 in (1,2)");
  return p;
}

namespace {

void derive_one(double b0, double b1c, double b2c, double rr0, double rr1,
                double rr2, double alpha, double tie_tol, double& r_out,
                double& b_out) {
  double cand[3] = {rr0 - 1.0, rr1 - 2.0, rr2 - alpha};
  double coef[3] = {b0, b1c, b2c};
  double rmin = 0;
  bool any = false;
  for (int j = 0; j < 3; ++j) {
    if (coef[j] == 0.0) continue;
    if (!any || cand[j] < rmin) rmin = cand[j];
    any = true;
  }
  // validation guarantees at least one active channel
  double bsum = 0;
  for (int j = 0; j < 3; ++j) {
    if (coef[j] == 0.0) continue;
    if (cand[j] - rmin <= tie_tol) bsum += coef[j];
  }
  r_out = rmin;
  b_out = bsum;
}

}  // namespace

DerivedParams derive_exponents(const ModelParams& p, double tie_tol) {
  DerivedParams d;
  derive_one(p.b10, p.b11, p.b12, p.r10, p.r11, p.r12, p.alpha1, tie_tol, d.r1, d.b1);
  derive_one(p.b20, p.b21, p.b22, p.r20, p.r21, p.r22, p.alpha2, tie_tol, d.r2, d.b2);
  return d;
}

std::pair<double, double> drift(const State& s, const ModelParams& p) {
  double dx = p.a1 * pow00(s.x, p.theta1) * pow00(s.y, p.kappa1) -
              p.b10 * pow00(s.x, p.r10);
  double dy = p.a2 * pow00(s.y, p.theta2) * pow00(s.x, p.kappa2) -
              p.b20 * pow00(s.y, p.r20);
  return {dx, dy};
}

std::pair<double, double> diffusion_coeff(const State& s, const ModelParams& p) {
  return {p.b11 * std::sqrt(2.0 * pow00(s.x, p.r11)),
          p.b21 * std::sqrt(2.0 * pow00(s.y, p.r21))};
}

std::pair<double, double> jump_scale(const State& s, const ModelParams& p) {
  return {p.b12 * pow00(s.x, p.r12), p.b22 * pow00(s.y, p.r22)};
}

ModelParams swap_blocks(const ModelParams& p) {
  ModelParams q = p;
  std::swap(q.a1, q.a2);
  std::swap(q.theta1, q.theta2);
  std::swap(q.kappa1, q.kappa2);
  std::swap(q.b10, q.b20);
  std::swap(q.b11, q.b21);
  std::swap(q.b12, q.b22);
  std::swap(q.r10, q.r20);
  std::swap(q.r11, q.r21);
  std::swap(q.r12, q.r22);
  std::swap(q.alpha1, q.alpha2);
  return q;
}

}  // namespace csbp
