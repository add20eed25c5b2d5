#include <doctest.h>

#include <cmath>

#include "csbp/generator.hpp"

using namespace csbp;

namespace {

ModelParams handvalue_params() {
  // a1=a2=1, theta=0, kappa=1, b10=b20=0, b11=b21=1, r11=r21=2, b12=b22=0
  ModelParams p;
  p.a1 = p.a2 = 1;
  p.theta1 = p.theta2 = 0;
  p.kappa1 = p.kappa2 = 1;
  p.b10 = p.b20 = 0;
  p.b11 = p.b21 = 1;
  p.r11 = p.r21 = 2;
  p.b12 = p.b22 = 0;
  p.alpha1 = p.alpha2 = 1.5;
  return p;
}

ModelParams with_jumps() {
  ModelParams p = handvalue_params();
  p.b12 = p.b22 = 1;
  p.r12 = p.r22 = 1;
  return p;
}

}  // namespace

TEST_CASE("closed jump moments, hand values") {
  StableMeasure m(1.5);
  CHECK(k_integral_closed_power(m, 1.0, 1.0, PowerSign::neg_power) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(k_integral_closed_power(m, 0.5, 1.0, PowerSign::pos_power) ==
        doctest::Approx(-1.0 / M_PI).epsilon(1e-12));
  // homogeneity
  CHECK(k_integral_closed_power(m, 1.0, 2.0, PowerSign::neg_power) ==
        doctest::Approx(1.5 * std::pow(2.0, -2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(k_integral_closed_power(m, 1.0, 1.0, PowerSign::pos_power), DomainError);
  CHECK_THROWS_AS(k_integral_closed_power(m, -0.5, 1.0, PowerSign::neg_power), DomainError);
}

TEST_CASE("numeric K-integral matches the closed power moment") {
  StableMeasure m(1.5);
  TestFunction tf = PowerInverse{1.0, 2.0};
  for (double x : {0.01, 0.3, 1.0, 4.0}) {
    double num = k_integral_numeric(tf, x, 0.7, Coord::X, m);
    double closed = k_integral_closed_power(m, 1.0, x, PowerSign::neg_power);
    CHECK(std::fabs(num / closed - 1.0) < 1e-6);
  }
}

TEST_CASE("K annihilates affine dependence") {
  StableMeasure m(1.4);
  TestFunction tf = LinearCap{1.0, 0.5};
  // the y-dependence of the cap is -y
  double v = k_integral_numeric(tf, 0.4, 0.2, Coord::Y, m);
  CHECK(std::fabs(v) < 1e-9);
}

TEST_CASE("numeric K-integral scaling on a pure power") {
  StableMeasure m(1.5);
  TestFunction tf = LinearCap{1.0, 0.5};  // x-part is -x^rho
  double v1 = k_integral_numeric(tf, 1.0, 0.2, Coord::X, m);
  double v2 = k_integral_numeric(tf, 2.0, 0.2, Coord::X, m);
  CHECK(std::fabs(v2 / (v1 * std::pow(2.0, 0.5 - 1.5)) - 1.0) < 1e-6);
}

TEST_CASE("generator hand value at (1,1)") {
  TestFunction tf = PowerInverse{1, 1};
  double L = apply_generator(tf, 1, 1, handvalue_params(), GenMode::closed);
  CHECK(L == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("closed and numeric modes agree with jumps active") {
  TestFunction tf = PowerInverse{1, 1};
  ModelParams p = with_jumps();
  for (double x : {0.03, 0.5}) {
    for (double y : {0.1, 1.0}) {
      double c = apply_generator(tf, x, y, p, GenMode::closed);
      double n = apply_generator(tf, x, y, p, GenMode::numeric);
      CHECK(std::fabs(n / c - 1.0) < 1e-5);
    }
  }
}

TEST_CASE("term-by-term reproduction of the inverse-power expansion") {
  // each channel alone reproduces its closed term
  const double rho1 = 2.0, rho2 = 3.0;
  TestFunction tf = PowerInverse{rho1, rho2};
  const double x = 0.3, y = 0.8;
  ModelParams zero;
  zero.a1 = zero.a2 = 0;
  zero.b10 = zero.b11 = zero.b12 = zero.b20 = zero.b21 = zero.b22 = 0;
  zero.alpha1 = zero.alpha2 = 1.5;

  ModelParams p = zero;
  p.a1 = 0.7;
  p.theta1 = 0.2;
  p.kappa1 = 1.3;
  CHECK(apply_generator(tf, x, y, p, GenMode::closed) ==
        doctest::Approx(-0.7 * rho1 * std::pow(x, 0.2 - 1.0 - rho1) * std::pow(y, 1.3))
            .epsilon(1e-13));

  p = zero;
  p.b10 = 0.4;
  p.r10 = 0.6;
  CHECK(apply_generator(tf, x, y, p, GenMode::closed) ==
        doctest::Approx(rho1 * 0.4 * std::pow(x, 0.6 - 1.0 - rho1)).epsilon(1e-13));

  p = zero;
  p.b11 = 1.2;
  p.r11 = 1.9;
  CHECK(apply_generator(tf, x, y, p, GenMode::closed) ==
        doctest::Approx(1.2 * rho1 * (rho1 + 1.0) * std::pow(x, 1.9 - 2.0 - rho1))
            .epsilon(1e-13));

  p = zero;
  p.b12 = 0.9;
  p.r12 = 1.1;
  StableMeasure m(1.5);
  CHECK(apply_generator(tf, x, y, p, GenMode::closed) ==
        doctest::Approx(m.c_rho(-rho1) * rho1 * (rho1 + 1.0) * 0.9 *
                        std::pow(x, 1.1 - 1.5 - rho1))
            .epsilon(1e-13));

  p = zero;
  p.b20 = 0.5;
  p.r20 = 0.8;
  CHECK(apply_generator(tf, x, y, p, GenMode::closed) ==
        doctest::Approx(rho2 * 0.5 * std::pow(y, 0.8 - 1.0 - rho2)).epsilon(1e-13));
}

TEST_CASE("generator is linear (closed mode)") {
  const double x = 0.4, y = 1.7;
  ModelParams p = with_jumps();
  p.b10 = 0.3;
  p.r10 = 0.5;
  double d1 = 0.6, d2 = 2.2;
  double Lw = apply_generator(TestFunction{PowerInverseWeighted{d1, 2, 3}}, x, y, p, GenMode::closed);
  double Lv = apply_generator(TestFunction{PowerInverseWeighted{d2, 2, 3}}, x, y, p, GenMode::closed);
  double Lmid = apply_generator(
      TestFunction{PowerInverseWeighted{0.5 * (d1 + d2), 2, 3}}, x, y, p, GenMode::closed);
  CHECK(std::fabs((Lw + Lv) / (2.0 * Lmid) - 1.0) < 1e-10);
}

TEST_CASE("generator symmetry under block and argument swap") {
  ModelParams p = with_jumps();
  p.a1 = 0.7;
  p.theta1 = 0.2;
  p.kappa1 = 1.4;
  p.b10 = 0.3;
  p.r10 = 0.8;
  p.alpha1 = 1.3;
  p.alpha2 = 1.7;
  const double x = 0.35, y = 1.2;
  double L = apply_generator(TestFunction{PowerInverse{2, 3}}, x, y, p, GenMode::closed);
  double Ls = apply_generator(TestFunction{PowerInverse{3, 2}}, y, x, swap_blocks(p),
                              GenMode::closed);
  CHECK(L == doctest::Approx(Ls).epsilon(1e-13));
}

TEST_CASE("closed mode refuses mixed families with active jumps") {
  ModelParams p = with_jumps();
  TestFunction tf = NegPowerSum{2, 2, 0.3, 1.0};
  CHECK_THROWS_AS(apply_generator(tf, 0.5, 0.5, p, GenMode::closed), DomainError);
  // with the jump channels off the closed mode is fine
  p.b12 = p.b22 = 0;
  CHECK_NOTHROW(apply_generator(tf, 0.5, 0.5, p, GenMode::closed));
}

TEST_CASE("numeric K-integral on LogType leaves its domain") {
  StableMeasure m(1.5);
  TestFunction tf = LogType{1.0, 4.0};
  CHECK_THROWS_AS(k_integral_numeric(tf, 1.0, 1.0, Coord::X, m), DomainError);
}

TEST_CASE("zero dynamics give a zero generator and a trivial upper bound") {
  ModelParams zero;
  zero.a1 = zero.a2 = 0;
  zero.b10 = zero.b11 = zero.b12 = zero.b20 = zero.b21 = zero.b22 = 0;
  TestFunction tf = PowerInverse{1, 1};
  CHECK(apply_generator(tf, 0.7, 0.2, zero, GenMode::closed) == 0.0);
  GridSpec grid;
  grid.nx = grid.ny = 8;
  auto rep = verify_drift_bound(tf, zero, 1.0, grid, Direction::upper);
  CHECK(rep.satisfied);
  CHECK(rep.constant == 0.0);
}

TEST_CASE("drift bound for the inverse-power certificate") {
  // two-sided window regime with diffusion-only channels
  ModelParams p;
  p.a1 = p.a2 = 1;
  p.theta1 = p.theta2 = 0;
  p.kappa1 = p.kappa2 = 0.5;
  p.b10 = p.b20 = 0;
  p.b11 = p.b21 = 1;
  p.r11 = p.r21 = 1.7;
  p.b12 = p.b22 = 0;
  GridSpec grid;
  grid.nx = grid.ny = 32;
  auto rep = verify_drift_bound(TestFunction{PowerInverse{2, 2}}, p, 1.0, grid,
                                Direction::upper);
  CHECK(rep.satisfied);
  CHECK(std::isfinite(rep.constant));
}

TEST_CASE("linear-cap scan and lower drift bound") {
  ModelParams p;
  p.a1 = 0.1;
  p.theta1 = 0.8;
  p.kappa1 = 2;
  p.b10 = 2;
  p.r10 = 0.5;
  p.b11 = 0.5;
  p.r11 = 2.5;
  p.b12 = 0;
  p.a2 = 0.1;
  p.theta2 = 0.5;
  p.kappa2 = 1;
  p.b20 = 0.1;
  p.r20 = 1;
  p.b21 = 0.5;
  p.r21 = 2.5;
  p.b22 = 0;
  auto dp = derive_exponents(validate(p));
  REQUIRE(dp.r1 == doctest::Approx(-0.5));
  auto fix = scan_linearcap_box(p, dp, 0.25);
  REQUIRE(fix.has_value());
  CHECK(fix->v > 0);
  CHECK(fix->d > 0);
  GridSpec grid;
  grid.nx = grid.ny = 32;
  auto rep = verify_drift_bound(TestFunction{LinearCap{fix->v, fix->rho}}, p,
                                fix->v, grid, Direction::lower);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0);
}
