#include "csbp/io.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>

namespace csbp {

namespace {

const char* kKeys[20] = {"a1",  "a2",  "theta1", "theta2", "kappa1", "kappa2",
                         "b10", "b11", "b12",    "b20",    "b21",    "b22",
                         "r10", "r11", "r12",    "r20",    "r21",    "r22",
                         "alpha1", "alpha2"};

double* field(ModelParams& p, const std::string& k) {
  if (k == "a1") return &p.a1;
  if (k == "a2") return &p.a2;
  if (k == "theta1") return &p.theta1;
  if (k == "theta2") return &p.theta2;
  if (k == "kappa1") return &p.kappa1;
  if (k == "kappa2") return &p.kappa2;
  if (k == "b10") return &p.b10;
  if (k == "b11") return &p.b11;
  if (k == "b12") return &p.b12;
  if (k == "b20") return &p.b20;
  if (k == "b21") return &p.b21;
  if (k == "b22") return &p.b22;
  if (k == "r10") return &p.r10;
  if (k == "r11") return &p.r11;
  if (k == "r12") return &p.r12;
  if (k == "r20") return &p.r20;
  if (k == "r21") return &p.r21;
  if (k == "r22") return &p.r22;
  if (k == "alpha1") return &p.alpha1;
  if (k == "alpha2") return &p.alpha2;
  return nullptr;
}

}  // namespace

ModelParams params_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("parameter file: expected a JSON object");
  ModelParams p;
  for (const char* k : kKeys) {
    auto it = j.find(k);
    if (it == j.end()) throw ConfigError(std::string("parameter file: missing key: ") + k);
    if (!it->is_number()) throw ConfigError(std::string("parameter file: key is not a number: ") + k);
    *field(p, k) = it->get<double>();
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!field(p, it.key()))
      throw ConfigError("parameter file: unknown key: " + it.key());
  }
  return p;
}

json params_to_json(const ModelParams& p) {
  ModelParams copy = p;
  json j = json::object();
  for (const char* k : kKeys) j[k] = *field(copy, k);
  return j;
}

ModelParams load_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open parameter file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("parameter file " + path + ": " + e.what());
  }
  return params_from_json(j);
}

json to_json(const McEstimate& e) {
  json j{{"n_paths", e.n_paths},
         {"n_extinct", e.n_extinct},
         {"n_extinct_x", e.n_extinct_x},
         {"n_extinct_y", e.n_extinct_y},
         {"n_exploded", e.n_exploded},
         {"n_survived", e.n_survived},
         {"p_hat", e.p_hat},
         {"ci_lo", e.ci_lo},
         {"ci_hi", e.ci_hi}};
  if (e.mean_t_extinct) j["mean_t_extinct"] = *e.mean_t_extinct;
  else j["mean_t_extinct"] = nullptr;
  return j;
}

json to_json(const RegimeReport& r) {
  json matched = json::array();
  json results = json::array();
  for (const auto& t : r.results) {
    json checklist = json::array();
    for (const auto& c : t.checklist)
      checklist.push_back(
          {{"condition", c.name}, {"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}});
    json entry{{"theorem", t.id}, {"matched", t.matched}, {"checklist", checklist}};
    results.push_back(entry);
    if (t.matched) matched.push_back(entry);
  }
  return json{{"verdict", to_string(r.verdict)},
              {"matched", matched},
              {"results", results},
              {"notes", r.notes}};
}

json to_json(const BoundReport& r) {
  return json{{"satisfied", r.satisfied},
              {"constant", r.constant},
              {"direction", r.direction == Direction::upper ? "upper" : "lower"},
              {"witness",
               {{"x", r.witness.x},
                {"y", r.witness.y},
                {"lhs", r.witness.lhs},
                {"rhs", r.witness.rhs}}},
              {"grid",
               {{"nx", r.grid.nx},
                {"ny", r.grid.ny},
                {"lo_factor", r.grid.lo_factor},
                {"box", r.box}}},
              {"note", r.note}};
}

json to_json(const IneqReport& r) {
  return json{{"lemma", r.lemma},
              {"trials_or_grid", r.trials_or_grid},
              {"satisfied", r.satisfied},
              {"worst_margin", r.worst_margin},
              {"witness", {{"x", r.witness_x}, {"y", r.witness_y}}},
              {"constant", r.constant},
              {"note", r.note}};
}

void atomic_write_file(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp" +
                        std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open for writing: " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace csbp
