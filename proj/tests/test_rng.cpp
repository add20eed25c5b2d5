#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "csbp/rng.hpp"

using namespace csbp;

TEST_CASE("streams are deterministic and distinct per path index") {
  RngStream a = RngStream::for_path(42, 7);
  RngStream b = RngStream::for_path(42, 7);
  RngStream c = RngStream::for_path(42, 8);
  bool same = true, diff = false;
  for (int i = 0; i < 64; ++i) {
    auto x = a.next_u64();
    same = same && (x == b.next_u64());
    diff = diff || (x != c.next_u64());
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("uniforms stay strictly inside (0,1)") {
  RngStream r(1);
  for (int i = 0; i < 100000; ++i) {
    double u = r.next_double();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  RngStream r(3);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    double z = r.next_normal();
    s += z;
    s2 += z * z;
  }
  double mean = s / n;
  double var = s2 / n - mean * mean;
  CHECK(std::fabs(mean) < 0.01);
  CHECK(std::fabs(var - 1.0) < 0.02);
}

TEST_CASE("poisson moments across both sampling regimes") {
  RngStream r(5);
  for (double mu : {0.3, 4.0, 25.0, 3000.0}) {
    const int n = 40000;
    double s = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      double k = static_cast<double>(r.next_poisson(mu));
      s += k;
      s2 += k * k;
    }
    double mean = s / n;
    double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - mu) < 5.0 * std::sqrt(mu / n) + 1e-9);
    CHECK(std::fabs(var - mu) < 0.05 * mu + 0.05);
  }
}

TEST_CASE("fast unit-pow kernel matches std::pow") {
  RngStream r(11);
  for (double alpha : {1.2, 1.5, 1.8}) {
    double c = -1.0 / alpha;
    double worst = 0;
    for (int i = 0; i < 200000; ++i) {
      double u = r.next_double();
      double fast = detail::fast_pow_unit(u, c);
      double ref = std::pow(u, c);
      worst = std::max(worst, std::fabs(fast / ref - 1.0));
    }
    CHECK(worst < 1e-9);
  }
}
