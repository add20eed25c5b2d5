#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "csbp/io.hpp"
#include "fixtures.hpp"

using namespace csbp;

TEST_CASE("params JSON round trip") {
  ModelParams p = fixtures::thm_1_2a_i();
  json j = params_to_json(p);
  ModelParams q = params_from_json(j);
  CHECK(params_to_json(q) == j);
  CHECK(q.a1 == p.a1);
  CHECK(q.alpha2 == p.alpha2);
  CHECK(q.r12 == p.r12);
}

TEST_CASE("missing key is named") {
  json j = params_to_json(fixtures::blank());
  j.erase("alpha2");
  CHECK_THROWS_WITH_AS(params_from_json(j),
                       "parameter file: missing key: alpha2", ConfigError);
}

TEST_CASE("unknown key is rejected") {
  json j = params_to_json(fixtures::blank());
  j["alpha3"] = 1.5;
  CHECK_THROWS_WITH_AS(params_from_json(j),
                       "parameter file: unknown key: alpha3", ConfigError);
}

TEST_CASE("non-numeric value is rejected") {
  json j = params_to_json(fixtures::blank());
  j["a1"] = "big";
  CHECK_THROWS_AS(params_from_json(j), ConfigError);
}

TEST_CASE("atomic write replaces the target") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "csbp_io_test";
  fs::create_directories(dir);
  fs::path f = dir / "out.txt";
  atomic_write_file(f.string(), "first");
  atomic_write_file(f.string(), "second");
  std::ifstream in(f);
  std::string got((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(got == "second");
  // no temp files left behind
  int extra = 0;
  for (auto& e : fs::directory_iterator(dir)) {
    if (e.path() != f) ++extra;
  }
  CHECK(extra == 0);
  fs::remove_all(dir);
}

TEST_CASE("report serializations carry the required fields") {
  BoundReport br;
  br.satisfied = true;
  br.constant = 3.5;
  br.witness = {0.1, 0.2, 1.0, 2.0};
  br.box = 1.0;
  json j = to_json(br);
  CHECK(j["satisfied"] == true);
  CHECK(j["constant"] == 3.5);
  CHECK(j["witness"]["x"] == 0.1);
  CHECK(j["witness"]["lhs"] == 1.0);
  CHECK(j.contains("grid"));

  McEstimate e;
  e.n_paths = 3;
  e.n_extinct = 1;
  e.n_survived = 2;
  e.p_hat = 1.0 / 3;
  json je = to_json(e);
  CHECK(je["mean_t_extinct"].is_null());
  CHECK(je["n_paths"] == 3);
}
