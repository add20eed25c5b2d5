#include <doctest.h>

#include <cmath>
#include <sstream>

#include "csbp/montecarlo.hpp"
#include "fixtures.hpp"

using namespace csbp;

namespace {

McConfig quick_cfg(long n, std::uint64_t seed) {
  McConfig cfg;
  cfg.n_paths = n;
  cfg.sim.dt = 2e-3;
  cfg.sim.t_max = 2.0;
  cfg.sim.seed = seed;
  cfg.x0 = cfg.y0 = 0.5;
  return cfg;
}

}  // namespace

TEST_CASE("wilson interval basics") {
  auto [lo0, hi0] = wilson_interval(0, 100);
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);
  CHECK(hi0 < 0.05);
  auto [lo1, hi1] = wilson_interval(100, 100);
  CHECK(hi1 == 1.0);
  CHECK(lo1 < 1.0);
  auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
}

TEST_CASE("single-path estimate is well defined") {
  McConfig cfg = quick_cfg(1, 5);
  McEstimate e = estimate_extinction_prob(fixtures::thm_1_2a_i(), cfg);
  CHECK((e.p_hat == 0.0 || e.p_hat == 1.0));
  CHECK(e.ci_lo >= 0.0);
  CHECK(e.ci_hi <= 1.0);
  CHECK(e.ci_lo <= e.p_hat);
  CHECK(e.p_hat <= e.ci_hi);
}

TEST_CASE("counts are conserved") {
  McConfig cfg = quick_cfg(300, 7);
  McEstimate e = estimate_extinction_prob(fixtures::thm_1_2a_i(), cfg);
  CHECK(e.n_extinct + e.n_exploded + e.n_survived == e.n_paths);
  CHECK(e.n_extinct_x + e.n_extinct_y == e.n_extinct);
}

TEST_CASE("worker-count invariance is bit exact") {
  ModelParams p = fixtures::thm_1_2a_i();
  p.b12 = 0.2;
  p.r12 = 1.0;
  std::vector<PathOutcome> o1, o4, omax;
  McConfig cfg = quick_cfg(200, 42);
  cfg.workers = 1;
  McEstimate e1 = run_paths(p, cfg, o1);
  cfg.workers = 4;
  McEstimate e4 = run_paths(p, cfg, o4);
  cfg.workers = 0;  // auto
  McEstimate em = run_paths(p, cfg, omax);
  CHECK(e1.n_extinct == e4.n_extinct);
  CHECK(e1.n_extinct == em.n_extinct);
  REQUIRE(o1.size() == o4.size());
  for (std::size_t i = 0; i < o1.size(); ++i) {
    CHECK(o1[i].t_end == o4[i].t_end);
    CHECK(o1[i].x_end == o4[i].x_end);
    CHECK(o1[i].y_end == omax[i].y_end);
    CHECK(o1[i].status == o4[i].status);
  }
  if (e1.mean_t_extinct) CHECK(*e1.mean_t_extinct == *e4.mean_t_extinct);
}

TEST_CASE("non-extinction fixture sees no extinctions at the tiny threshold") {
  McConfig cfg = quick_cfg(200, 3);
  cfg.x0 = cfg.y0 = 1.0;
  McEstimate e = estimate_extinction_prob(fixtures::prop_1_2(), cfg);
  CHECK(e.n_extinct == 0);
}

TEST_CASE("extinction fixture has a CI bounded away from zero") {
  McConfig cfg = quick_cfg(200, 3);
  McEstimate e = estimate_extinction_prob(fixtures::thm_1_2a_i(), cfg);
  CHECK(e.ci_lo > 0.0);
  CHECK(e.mean_t_extinct.has_value());
}

TEST_CASE("seed sensitivity, soft assertion with retries") {
  ModelParams p = fixtures::thm_1_2a_i();
  p.a1 = 2.0;  // strengthen the interaction so p_hat is interior
  p.kappa1 = 0.5;
  bool ok = false;
  for (std::uint64_t attempt = 0; attempt < 3 && !ok; ++attempt) {
    McConfig a = quick_cfg(1500, 1000 + attempt);
    McConfig b = quick_cfg(1500, 5000 + attempt);
    McEstimate ea = estimate_extinction_prob(p, a);
    McEstimate eb = estimate_extinction_prob(p, b);
    ok = ea.ci_lo <= eb.ci_hi && eb.ci_lo <= ea.ci_hi;
  }
  CHECK(ok);
}

TEST_CASE("halving dt keeps the outcome distribution stable") {
  ModelParams p = fixtures::thm_1_2a_i();
  McConfig coarse = quick_cfg(300, 9);
  McConfig fine = quick_cfg(300, 9);
  fine.sim.dt = coarse.sim.dt / 2;
  McEstimate a = estimate_extinction_prob(p, coarse);
  McEstimate b = estimate_extinction_prob(p, fine);
  CHECK(a.ci_lo <= b.ci_hi);
  CHECK(b.ci_lo <= a.ci_hi);
}

TEST_CASE("sweep with a single point equals the direct estimate") {
  ModelParams p = fixtures::thm_1_2a_i();
  McConfig cfg = quick_cfg(100, 21);
  SweepAxis ax{"a1", p.a1, p.a1, 1, false};
  auto rows = sweep(p, ax, std::nullopt, cfg);
  REQUIRE(rows.size() == 1);
  McEstimate direct = estimate_extinction_prob(p, cfg);
  CHECK(rows[0].valid);
  CHECK(rows[0].est.n_extinct == direct.n_extinct);
  CHECK(rows[0].est.p_hat == direct.p_hat);
}

TEST_CASE("sweep flags invalid grid points") {
  ModelParams p = fixtures::thm_1_2a_i();
  McConfig cfg = quick_cfg(20, 21);
  SweepAxis ax{"alpha1", 1.5, 2.5, 3, false};  // last two leave (1,2)
  auto rows = sweep(p, ax, std::nullopt, cfg);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].valid);
  CHECK_FALSE(rows[1].valid);
  CHECK_FALSE(rows[2].valid);
  CHECK(rows[1].skip_reason == "alpha1 in (1,2)");
}

TEST_CASE("p_hat grows with the extinction threshold under a shared seed") {
  ModelParams p = fixtures::thm_1_2a_i();
  p.a1 = 2.0;
  p.kappa1 = 0.5;
  McConfig cfg = quick_cfg(200, 33);
  SweepAxis ax{"eps_extinct", 1e-10, 1e-2, 5, true};
  auto rows = sweep(p, ax, std::nullopt, cfg);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].valid);
    CHECK(rows[i].est.p_hat >= rows[i - 1].est.p_hat);
  }
}

TEST_CASE("two-axis sweep joins verdicts and estimates") {
  ModelParams p = fixtures::thm_1_4_base(1.0);
  McConfig cfg = quick_cfg(10, 2);
  cfg.x0 = cfg.y0 = 0.5;
  SweepAxis a1{"a1", 0.8, 1.3, 2, false};
  SweepAxis a2{"a2", 0.8, 1.3, 2, false};
  auto rows = sweep(p, a1, std::make_optional(a2), cfg);
  REQUIRE(rows.size() == 4);
  // verdict column flips across the critical threshold
  CHECK(rows[0].verdict == "ExtinctionPositiveProb");   // 0.8, 0.8
  CHECK(rows[3].verdict == "NonExtinctionAS");          // 1.3, 1.3
}

TEST_CASE("csv formats") {
  std::vector<PathOutcome> outs = {
      {PathStatus::ExtinctX, 0.125, 0.0, 0.5},
      {PathStatus::Survived, 2.0, 1.25, 0.75},
  };
  std::ostringstream os;
  write_paths_csv(os, outs);
  CHECK(os.str() ==
        "path_id,status,t_end,x_end,y_end\n"
        "0,ExtinctX,0.125,0,0.5\n"
        "1,Survived,2,1.25,0.75\n");

  std::ostringstream os2;
  SweepRow row;
  row.valid = true;
  row.varied = {0.123456789123};
  row.verdict = "Undetermined";
  row.est.n_paths = 2;
  row.est.n_extinct = 1;
  row.est.n_exploded = 0;
  row.est.n_survived = 1;
  row.est.p_hat = 0.5;
  row.est.ci_lo = 0.0945531915;
  row.est.ci_hi = 0.905446809;
  row.est.mean_t_extinct = 0.25;
  write_sweep_csv(os2, {"a1"}, {row});
  CHECK(os2.str() ==
        "a1,verdict,n_paths,n_extinct,n_exploded,n_survived,p_hat,ci_lo,ci_hi,"
        "mean_t_extinct\n"
        "0.123456789,Undetermined,2,1,0,1,0.5,0.0945531915,0.905446809,0.25\n");
}
