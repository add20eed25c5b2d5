#include <doctest.h>

#include <cmath>
#include <cstring>

#include "csbp/ineqlab.hpp"

using namespace csbp;

TEST_CASE("young variant (i) holds over random trials") {
  RngStream rng(41);
  auto rep = young_check(YoungVariant::i, {}, 10000, rng);
  CHECK(rep.satisfied);
}

TEST_CASE("young variant (i) equality points") {
  // first form is tight at p u = q v, second at u = v
  RngStream rng(43);
  for (int t = 0; t < 200; ++t) {
    double p = 1.0 + 7.0 * rng.next_double();
    double q = p / (p - 1.0);
    double w = std::exp(6.0 * (rng.next_double() - 0.5));
    double u = q * w, v = p * w;
    double lhs = u + v;
    double rhs = std::pow(p, 1 / p) * std::pow(q, 1 / q) * std::pow(u, 1 / p) *
                 std::pow(v, 1 / q);
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * lhs);
    double lhs2 = w / p + w / q;
    double rhs2 = std::pow(w, 1 / p) * std::pow(w, 1 / q);
    CHECK(std::fabs(lhs2 - rhs2) <= 1e-10 * lhs2);
  }
}

TEST_CASE("young variant (i) simple instance") {
  // u=4, v=9, p=q=2: 13 >= 12
  double u = 4, v = 9;
  CHECK(u + v >= 2.0 * std::sqrt(u * v));
}

TEST_CASE("young variant (ii) both branches") {
  RngStream rng(47);
  CHECK(young_check(YoungVariant::ii_le1, {}, 10000, rng).satisfied);
  CHECK(young_check(YoungVariant::ii_gt1, {}, 10000, rng).satisfied);
  // p = 0.5 at x = y = 1: 2 >= sqrt 2
  CHECK(2.0 >= std::sqrt(2.0));
}

TEST_CASE("young variant (iii) finds a box") {
  RngStream rng(53);
  YoungInputs in;
  in.p1 = in.p2 = 1.0;
  in.p3 = in.p4 = 0.75;  // exponent sum 1.5 > 1
  in.c1 = in.c2 = in.c3 = 1.0;
  auto rep = young_check(YoungVariant::iii, in, 0, rng);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);
  in.p3 = in.p4 = 0.5;  // sum exactly 1, precondition fails
  CHECK_THROWS_AS(young_check(YoungVariant::iii, in, 0, rng), PreconditionError);
}

TEST_CASE("box constant for the four-term lemma") {
  BoxInputs in;
  in.r1 = in.r2 = -0.3;
  in.theta1 = in.theta2 = 0.0;
  in.kappa1 = in.kappa2 = 0.8;  // (3.6): 0.875 < 1 < 1.142
  in.rho1 = in.rho2 = 2.0;
  auto rep = find_box_constant(BoxLemma::L7_1, in);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);

  // kappa too small violates (3.6)
  BoxInputs bad = in;
  bad.kappa1 = bad.kappa2 = 0.5;
  CHECK_THROWS_AS(find_box_constant(BoxLemma::L7_1, bad), HypothesisError);
}

TEST_CASE("box constant grows when the negative terms shrink") {
  BoxInputs in;
  in.r1 = in.r2 = -0.3;
  in.kappa1 = in.kappa2 = 0.8;
  in.rho1 = in.rho2 = 2.0;
  auto rep1 = find_box_constant(BoxLemma::L7_1, in);
  in.c3 *= 0.1;
  in.c4 *= 0.1;
  auto rep2 = find_box_constant(BoxLemma::L7_1, in);
  CHECK(rep2.constant >= rep1.constant);
}

TEST_CASE("box constant conclusion holds on sub-boxes") {
  BoxInputs in;
  in.r1 = in.r2 = -0.3;
  in.kappa1 = in.kappa2 = 0.8;
  in.rho1 = in.rho2 = 2.0;
  auto rep = find_box_constant(BoxLemma::L7_1, in);
  REQUIRE(rep.satisfied);
  double c = rep.constant;
  for (double frac : {0.5, 0.1, 0.01}) {
    double cc = c * frac;
    for (int i = 0; i < 12; ++i) {
      double x = cc * std::pow(1e-4, i / 11.0);
      for (int j = 0; j < 12; ++j) {
        double y = cc * std::pow(1e-4, j / 11.0);
        double f = std::pow(x, in.r1 + in.rho1) + std::pow(y, in.r2 + in.rho2) -
                   0.1 * std::pow(x, in.theta1 - 1 + in.rho1) * std::pow(y, in.kappa1) -
                   0.1 * std::pow(y, in.theta2 - 1 + in.rho2) * std::pow(x, in.kappa2);
        REQUIRE(f >= -1e-12);
      }
    }
  }
}

TEST_CASE("box constant for the two-term lemma") {
  BoxInputs in;
  in.r2 = -0.5;
  in.theta1 = 0.0;
  in.theta2 = 0.3;
  in.kappa1 = 1.0;
  in.kappa2 = 0.4;
  in.rho1 = 3.5;
  in.rho2 = 0.5;
  // (5.20): 0.5 > (1.7+0.5)/(1.4+3.5) = 0.449
  auto rep = find_box_constant(BoxLemma::L3_2, in);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);
  in.rho1 = 1.0;  // pushes (5.20) the wrong way
  CHECK_THROWS_AS(find_box_constant(BoxLemma::L3_2, in), HypothesisError);
}

TEST_CASE("delta0 for the symmetric critical lemma") {
  RngStream rng(61);
  DeltaInputs in;
  in.a1 = 2.0;
  in.a2 = 0.6;  // a1 a2 = 1.2 >= b1 b2 = 1
  in.b1 = in.b2 = 1.0;
  in.theta1 = in.theta2 = 0.3;
  in.kappa1 = in.kappa2 = 0.4;
  auto rep = find_delta0(DeltaLemma::L5_1, in, 10000, rng);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);

  in.a1 = 0.5;  // a1 a2 < b1 b2, sandwich must be empty
  CHECK_THROWS_AS(find_delta0(DeltaLemma::L5_1, in, 100, rng), HypothesisError);
}

TEST_CASE("delta0 via the ratio sandwich of the asymmetric lemma") {
  RngStream rng(67);
  DeltaInputs in;
  in.a1 = 1.3;
  in.a2 = 1.3;
  in.b1 = in.b2 = 1.0;
  in.theta1 = in.theta2 = 0.0;
  in.kappa1 = in.kappa2 = 0.7;
  in.r1 = in.r2 = -0.3;
  in.rho1 = in.rho2 = 2.0;  // (1.22b): all three ratios equal 1
  auto rep = find_delta0(DeltaLemma::L5_3, in, 10000, rng);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);

  DeltaInputs bad = in;
  bad.a1 = bad.a2 = 0.8;  // (5.2) reversed
  CHECK_THROWS_AS(find_delta0(DeltaLemma::L5_3, bad, 100, rng), HypothesisError);
}

TEST_CASE("delta0 with the noise-adjusted coefficients") {
  RngStream rng(71);
  DeltaInputs in;
  in.a1 = in.a2 = 0.4;
  in.b1 = in.b2 = 1.0;
  in.theta1 = in.theta2 = 0.0;
  in.kappa1 = in.kappa2 = 0.7;
  in.r1 = in.r2 = -0.3;
  in.rho1 = in.rho2 = 2.0;
  in.rho = 0.2;
  in.eps0 = 0.2;  // b~ = 0.8 * 0.6 = 0.48 > a
  auto rep = find_delta0(DeltaLemma::L5_2, in, 10000, rng);
  CHECK(rep.satisfied);
  CHECK(rep.constant > 0.0);

  DeltaInputs bad = in;
  bad.a1 = bad.a2 = 0.6;  // above b~, (4.0) fails
  CHECK_THROWS_AS(find_delta0(DeltaLemma::L5_2, bad, 100, rng), HypothesisError);
}

TEST_CASE("K(v,.) integral basics") {
  StableMeasure m(1.5);
  CHECK(kvz_integral(m, 2.0, 0.25, 0.0) == 0.0);
  // at v=1 the integral reduces to the closed positive-power moment at x=1
  double v1 = kvz_integral(m, 2.0, 0.25, 1.0);
  double rr = 0.5;
  double closed = -rr * (rr - 1.0) * m.c_rho(rr);  // -∫K_z x^{rr} at x=1
  CHECK(std::fabs(v1 - closed) < 1e-6 * std::fabs(closed));
}

TEST_CASE("kvz lower bound, lemma (ii)") {
  StableMeasure m(1.5);
  std::vector<double> grid{0.25, 0.6, 1.0};
  auto rep = kvz_bounds_check(m, 2.0, 0.25, grid, KvzMode::lemma_ii, 8.0);
  CHECK(rep.satisfied);
}

TEST_CASE("kvz d2 scan is monotone decreasing in delta") {
  StableMeasure m(1.5);
  double prev = 1e300;
  for (double d : {1.0, 2.0, 4.0, 8.0, 16.0}) {
    double v = kvz_d2_delta(m, 2.0, 0.25, d);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("kvz lemma (i) scan reports the smallest passing rho1") {
  StableMeasure m(1.5);
  std::vector<double> grid{0.2, 0.5, 0.8, 1.0};
  double found = 0;
  for (double rho1 : {4.0, 8.0, 16.0, 32.0}) {
    auto rep = kvz_bounds_check(m, rho1, 0.5 / rho1, grid, KvzMode::lemma_i);
    if (rep.satisfied) {
      found = rho1;
      break;
    }
  }
  CHECK(found > 0);
}

TEST_CASE("reports are bit-for-bit reproducible") {
  StableMeasure m(1.5);
  std::vector<double> grid{0.3, 0.9};
  auto a = kvz_bounds_check(m, 2.0, 0.25, grid, KvzMode::lemma_ii, 8.0);
  auto b = kvz_bounds_check(m, 2.0, 0.25, grid, KvzMode::lemma_ii, 8.0);
  CHECK(std::memcmp(&a.worst_margin, &b.worst_margin, sizeof(double)) == 0);
  RngStream r1(5), r2(5);
  DeltaInputs in;
  in.a1 = 2.0;
  in.a2 = 0.6;
  in.b1 = in.b2 = 1.0;
  in.theta1 = in.theta2 = 0.3;
  in.kappa1 = in.kappa2 = 0.4;
  auto c = find_delta0(DeltaLemma::L5_1, in, 2000, r1);
  auto d = find_delta0(DeltaLemma::L5_1, in, 2000, r2);
  CHECK(std::memcmp(&c.worst_margin, &d.worst_margin, sizeof(double)) == 0);
}
