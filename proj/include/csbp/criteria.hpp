#pragma once

#include <string>
#include <vector>

#include "csbp/model.hpp"

namespace csbp {

enum class Verdict { NonExtinctionAS, ExtinctionPositiveProb, Undetermined };

const char* to_string(Verdict v);

// one transcribed inequality with the numeric values of both sides
struct ConditionEval {
  std::string name;
  bool holds = false;
  double lhs = 0, rhs = 0;
};

struct TheoremMatch {
  std::string id;      // e.g. "thm_1_2a(i)"
  bool matched = false;
  std::vector<ConditionEval> checklist;
};

struct RegimeReport {
  Verdict verdict = Verdict::Undetermined;
  std::vector<TheoremMatch> results;  // every theorem, matched or not
  std::vector<std::string> notes;
};

struct C1Eval {
  bool i = false, ii = false, iii = false;
  std::vector<ConditionEval> details;
  bool any() const { return i || ii || iii; }
};

struct C2Eval {
  bool i = false, ii = false;
  std::vector<ConditionEval> details;
  bool any() const { return i || ii; }
};

// Drift-dominance condition: (i) both drift channels lead near zero;
// (ii)/(iii) one-sided versions with the ratio guards. Ratios of negative
// quantities are plain real division throughout.
C1Eval eval_condition_c1(const ModelParams& p, const DerivedParams& dp);

// Test-function-side condition; requires theta_i - 1 < r_i < 0, otherwise
// both branches are false with a note.
C2Eval eval_condition_c2(const ModelParams& p, const DerivedParams& dp,
                         std::vector<std::string>* notes = nullptr);

// per coordinate: b_i0 != 0 and r_i0 - 1 >= min over active diffusive/jump
// channels of r_ij - varrho_ij; an empty active set would make the condition
// false, but validation rules that state out
std::pair<bool, bool> eval_eq_1_6(const ModelParams& p, const DerivedParams& dp);

// Evaluates every theorem's hypotheses and produces the verdict. Matching a
// non-extinction and an extinction theorem at once is an internal consistency
// error (std::logic_error); the regimes are disjoint.
RegimeReport classify(const ModelParams& p, double tie_tol = 0.0);

std::string report_table(const RegimeReport& r);

}  // namespace csbp
