#include "csbp/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace csbp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NonExtinctionAS: return "NonExtinctionAS";
    case Verdict::ExtinctionPositiveProb: return "ExtinctionPositiveProb";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

constexpr double kNearTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double scale_of(double a, double b) {
  return std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Strict and non-strict comparisons are transcribed exactly, except within
// 1e-12 (relative) of the threshold: there a strict inequality cannot be
// certified and evaluates false, a non-strict one evaluates true, and the
// report gets a near-critical note. Without the band, rounding in expressions
// like r11 - 2 + 1 - theta1 would silently decide exact-equality fixtures.
struct Ctx {
  std::vector<ConditionEval>* checklist;
  std::vector<std::string>* notes;

  static bool near(double lhs, double rhs) {
    return std::isfinite(lhs) && std::isfinite(rhs) &&
           std::fabs(lhs - rhs) <= kNearTol * scale_of(lhs, rhs);
  }
  void flag(const std::string& name, double lhs, double rhs) const {
    if (near(lhs, rhs) && notes) notes->push_back("near-critical: " + name);
    if ((std::isnan(lhs) || std::isnan(rhs)) && notes)
      notes->push_back("NaN comparison in " + name);
  }
  bool push(const std::string& name, bool holds, double lhs, double rhs) const {
    if (checklist) checklist->push_back({name, holds, lhs, rhs});
    return holds;
  }
  bool lt(const std::string& name, double lhs, double rhs) const {
    flag(name, lhs, rhs);
    return push(name, lhs < rhs && !near(lhs, rhs), lhs, rhs);
  }
  bool gt(const std::string& name, double lhs, double rhs) const {
    flag(name, lhs, rhs);
    return push(name, lhs > rhs && !near(lhs, rhs), lhs, rhs);
  }
  bool le(const std::string& name, double lhs, double rhs) const {
    flag(name, lhs, rhs);
    return push(name, lhs <= rhs || near(lhs, rhs), lhs, rhs);
  }
  bool ge(const std::string& name, double lhs, double rhs) const {
    flag(name, lhs, rhs);
    return push(name, lhs >= rhs || near(lhs, rhs), lhs, rhs);
  }
  bool eq(const std::string& name, double lhs, double rhs) const {
    return push(name, near(lhs, rhs), lhs, rhs);
  }
  bool both(const std::string& name, bool holds) const {
    return push(name, holds, holds ? 1 : 0, 1);
  }
};

// min over active diffusive/jump channels of r_ij - varrho_ij; +inf when both
// are inactive (validation forbids that state)
double min_noise_exponent(const ModelParams& p, int i) {
  double b1 = i == 1 ? p.b11 : p.b21;
  double b2 = i == 1 ? p.b12 : p.b22;
  double r1 = i == 1 ? p.r11 : p.r21;
  double r2 = i == 1 ? p.r12 : p.r22;
  double alpha = i == 1 ? p.alpha1 : p.alpha2;
  double m = kInf;
  if (b1 != 0.0) m = std::min(m, r1 - 2.0);
  if (b2 != 0.0) m = std::min(m, r2 - alpha);
  return m;
}

// r_i0 - 1 < min{r_ij - varrho_ij : b_ij != 0, j = 1,2}
bool eq_1_8(const Ctx& c, const ModelParams& p, int i) {
  double r0 = i == 1 ? p.r10 : p.r20;
  double m = min_noise_exponent(p, i);
  return c.lt(i == 1 ? "(1.8)" : "(1.9)", r0 - 1.0, m);
}

}  // namespace

C1Eval eval_condition_c1(const ModelParams& p, const DerivedParams& dp) {
  C1Eval out;
  Ctx c{&out.details, nullptr};

  const bool drift_x = p.b10 != 0.0;
  const bool drift_y = p.b20 != 0.0;
  const bool both_drift = c.both("b10*b20 != 0", drift_x && drift_y);
  const bool e18 = eq_1_8(c, p, 1);
  const bool e19 = eq_1_8(c, p, 2);

  out.i = both_drift && e18 && e19;

  const double guard_ii = (dp.r1 + 1.0 - p.theta1) / p.kappa1;
  const double guard_iii = (dp.r2 + 1.0 - p.theta2) / p.kappa2;
  const double ratio12 = dp.r1 / dp.r2;
  const double ratio21 = dp.r2 / dp.r1;

  bool g2 = c.lt("(r1+1-theta1)/kappa1 < r1/r2", guard_ii, ratio12);
  bool branch_ii = (both_drift && e18 && !e19) || (!drift_y && drift_x && e18);
  c.both("C1(ii) drift branch", branch_ii);
  out.ii = g2 && branch_ii;

  bool g3 = c.lt("(r2+1-theta2)/kappa2 < r2/r1", guard_iii, ratio21);
  bool branch_iii = (both_drift && e19 && !e18) || (!drift_x && drift_y && e19);
  c.both("C1(iii) drift branch", branch_iii);
  out.iii = g3 && branch_iii;
  return out;
}

C2Eval eval_condition_c2(const ModelParams& p, const DerivedParams& dp,
                         std::vector<std::string>* notes) {
  C2Eval out;
  Ctx c{&out.details, notes};
  const double r1 = dp.r1, r2 = dp.r2;
  if (!(p.theta1 - 1.0 < r1 && r1 < 0.0 && p.theta2 - 1.0 < r2 && r2 < 0.0)) {
    if (notes) notes->push_back("C2 requires theta_i - 1 < r_i < 0; not met");
    c.both("C2 precondition theta_i-1 < r_i < 0", false);
    return out;
  }
  const bool e3113 =
      c.lt("(3.113)", std::max((r1 + 1.0) / (r2 + 1.0), r1 / r2),
           p.kappa2 / (r2 + 1.0 - p.theta2));
  const bool e3113b =
      c.lt("(3.113b)", std::max((r2 + 1.0) / (r1 + 1.0), r2 / r1),
           p.kappa1 / (r1 + 1.0 - p.theta1));
  out.i = e3113 || e3113b;

  const double rhs_a =
      std::min(std::min(p.kappa2 / (r2 + 1.0 - p.theta2),
                        (p.kappa2 - r1) / (1.0 - p.theta2)),
               std::min(1.0 - p.theta1, 2.0 - p.kappa2));
  const bool e3122a =
      c.lt("(3.122a)", (1.0 - p.theta1) / (p.kappa1 - r2), rhs_a);
  const double rhs_b =
      std::min(std::min(p.kappa1 / (r1 + 1.0 - p.theta1),
                        (p.kappa1 - r2) / (1.0 - p.theta1)),
               std::min(1.0 - p.theta2, 2.0 - p.kappa1));
  const bool e3122b =
      c.lt("(3.122b)", (1.0 - p.theta2) / (p.kappa2 - r1), rhs_b);
  out.ii = e3122a || e3122b;
  return out;
}

std::pair<bool, bool> eval_eq_1_6(const ModelParams& p, const DerivedParams&) {
  auto one = [&](int i) {
    double b0 = i == 1 ? p.b10 : p.b20;
    if (b0 == 0.0) return false;
    double r0 = i == 1 ? p.r10 : p.r20;
    double m = min_noise_exponent(p, i);
    if (m == kInf) return false;  // min over empty set: condition false
    return r0 - 1.0 >= m || Ctx::near(r0 - 1.0, m);
  };
  return {one(1), one(2)};
}

namespace {

struct Classifier {
  const ModelParams& p;
  const DerivedParams& dp;
  RegimeReport& rep;

  TheoremMatch& open(const std::string& id) {
    rep.results.push_back(TheoremMatch{id, false, {}});
    return rep.results.back();
  }

  // theta_i - 1 < r_i < 0 for both coordinates
  bool window(Ctx& c) const {
    bool a = c.lt("theta1-1 < r1", p.theta1 - 1.0, dp.r1) & c.lt("r1 < 0", dp.r1, 0.0);
    bool b = c.lt("theta2-1 < r2", p.theta2 - 1.0, dp.r2) & c.lt("r2 < 0", dp.r2, 0.0);
    return a && b;
  }

  double interaction_product() const {
    return (dp.r1 + 1.0 - p.theta1) * (dp.r2 + 1.0 - p.theta2);
  }
  double critical_ratio() const {
    return std::pow(p.a1 / dp.b1, 1.0 / (dp.r1 + 1.0 - p.theta1)) *
           std::pow(p.a2 / dp.b2, 1.0 / p.kappa2);
  }

  void run() {
    auto& notes = rep.notes;

    {  // Prop 1.2: r1, r2 >= 0
      auto& t = open("prop_1_2");
      Ctx c{&t.checklist, &notes};
      t.matched = c.ge("r1 >= 0", dp.r1, 0.0) & c.ge("r2 >= 0", dp.r2, 0.0);
    }
    {  // Thm 1.1a (i): r1 >= 0 and theta2-1 < r2 < 0
      auto& t = open("thm_1_1a(i)");
      Ctx c{&t.checklist, &notes};
      t.matched = c.ge("r1 >= 0", dp.r1, 0.0) &
                  c.lt("theta2-1 < r2", p.theta2 - 1.0, dp.r2) &
                  c.lt("r2 < 0", dp.r2, 0.0);
    }
    {  // Thm 1.1a (ii)
      auto& t = open("thm_1_1a(ii)");
      Ctx c{&t.checklist, &notes};
      t.matched = c.ge("r2 >= 0", dp.r2, 0.0) &
                  c.lt("theta1-1 < r1", p.theta1 - 1.0, dp.r1) &
                  c.lt("r1 < 0", dp.r1, 0.0);
    }
    {  // Thm 1.1: window and (1.2)
      auto& t = open("thm_1_1");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      t.matched =
          w & c.gt("(1.2)", interaction_product(), p.kappa1 * p.kappa2);
    }
    C1Eval c1 = eval_condition_c1(p, dp);
    {  // Thm 1.4 (i): window, (1.2b), C1(i), (1.2bb)
      auto& t = open("thm_1_4(i)");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool crit = c.eq("(1.2b)", interaction_product(), p.kappa1 * p.kappa2);
      bool c1i = c.both("C1(i)", c1.i);
      bool ratio = c.gt("(1.2bb)", critical_ratio(), 1.0);
      t.matched = w && crit && c1i && ratio;
    }
    {  // Thm 1.4 (ii): the symmetric equality cluster
      auto& t = open("thm_1_4(ii)");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool crit = c.eq("(1.2b)", interaction_product(), p.kappa1 * p.kappa2);
      bool nojump = c.both("b12 = b22 = 0", p.b12 == 0.0 && p.b22 == 0.0);
      bool cluster = c.eq("r10-1 = r11-2", p.r10 - 1.0, p.r11 - 2.0) &
                     c.eq("r20-1 = r21-2", p.r20 - 1.0, p.r21 - 2.0) &
                     c.eq("r10-1 = r20-1", p.r10 - 1.0, p.r20 - 1.0);
      bool sym = c.eq("theta1 = theta2", p.theta1, p.theta2) &
                 c.eq("kappa1 = kappa2", p.kappa1, p.kappa2);
      bool prod = c.ge("a1 a2 >= b1 b2", p.a1 * p.a2, dp.b1 * dp.b2);
      t.matched = w && crit && nojump && cluster && sym && prod;
    }
    {  // Thm 1.2a (i): r1 <= theta1 - 1 and r1 < 0
      auto& t = open("thm_1_2a(i)");
      Ctx c{&t.checklist, &notes};
      t.matched = c.le("r1 <= theta1-1", dp.r1, p.theta1 - 1.0) &
                  c.lt("r1 < 0", dp.r1, 0.0);
    }
    {  // Thm 1.2a (ii)
      auto& t = open("thm_1_2a(ii)");
      Ctx c{&t.checklist, &notes};
      t.matched = c.le("r2 <= theta2-1", dp.r2, p.theta2 - 1.0) &
                  c.lt("r2 < 0", dp.r2, 0.0);
    }
    auto [e16_x, e16_y] = eval_eq_1_6(p, dp);
    C2Eval c2 = eval_condition_c2(p, dp, nullptr);
    {  // Thm 1.2 (i): window, C1, (1.3)
      auto& t = open("thm_1_2(i)");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool c1any = c.both("Condition C1", c1.any());
      t.matched = w && c1any &&
                  c.lt("(1.3)", interaction_product(), p.kappa1 * p.kappa2);
    }
    {  // Thm 1.2 (ii): window, (1.6) both, (1.3), C2
      auto& t = open("thm_1_2(ii)");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool e16 = c.both("(1.6) i=1", e16_x) & c.both("(1.6) i=2", e16_y);
      bool l3 = c.lt("(1.3)", interaction_product(), p.kappa1 * p.kappa2);
      bool c2any = c.both("Condition C2", c2.any());
      t.matched = w && e16 && l3 && c2any;
    }
    {  // Thm 1.2 (iii): window, (1.6) both, strict cross inequalities
      auto& t = open("thm_1_2(iii)");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool e16 = c.both("(1.6) i=1", e16_x) & c.both("(1.6) i=2", e16_y);
      bool cross = c.lt("r1+1-theta1 < kappa2", dp.r1 + 1.0 - p.theta1, p.kappa2) &
                   c.lt("r2+1-theta2 < kappa1", dp.r2 + 1.0 - p.theta2, p.kappa1);
      t.matched = w && e16 && cross;
    }
    {  // Thm 1.4bb: window, (1.2b), C1, (1.3cc)
      auto& t = open("thm_1_4bb");
      Ctx c{&t.checklist, &notes};
      bool w = window(c);
      bool crit = c.eq("(1.2b)", interaction_product(), p.kappa1 * p.kappa2);
      bool c1any = c.both("Condition C1", c1.any());
      bool ratio = c.lt("(1.3cc)", critical_ratio(), 1.0);
      t.matched = w && crit && c1any && ratio;
    }
  }
};

bool is_nonextinction(const std::string& id) {
  return id.rfind("prop_1_2", 0) == 0 || id.rfind("thm_1_1", 0) == 0 ||
         id.rfind("thm_1_4(", 0) == 0;
}

}  // namespace

RegimeReport classify(const ModelParams& p, double tie_tol) {
  validate(p);
  DerivedParams dp = derive_exponents(p, tie_tol);
  RegimeReport rep;
  Classifier{p, dp, rep}.run();

  bool non_ext = false, ext = false;
  for (const auto& t : rep.results) {
    if (!t.matched) continue;
    (is_nonextinction(t.id) ? non_ext : ext) = true;
  }
  if (non_ext && ext)
    throw std::logic_error(
        "classify: a non-extinction and an extinction theorem matched at once; "
        "condition transcription bug");
  rep.verdict = non_ext ? Verdict::NonExtinctionAS
                        : (ext ? Verdict::ExtinctionPositiveProb
                               : Verdict::Undetermined);
  return rep;
}

std::string report_table(const RegimeReport& r) {
  std::ostringstream os;
  char buf[160];
  os << "verdict: " << to_string(r.verdict) << "\n";
  for (const auto& t : r.results) {
    std::snprintf(buf, sizeof buf, "%-14s %s\n", t.id.c_str(),
                  t.matched ? "matched" : "-");
    os << buf;
    for (const auto& c : t.checklist) {
      std::snprintf(buf, sizeof buf, "    %-34s %-5s lhs=%- .9g rhs=%- .9g\n",
                    c.name.c_str(), c.holds ? "true" : "false", c.lhs, c.rhs);
      os << buf;
    }
  }
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace csbp
