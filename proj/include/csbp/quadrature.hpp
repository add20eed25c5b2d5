#pragma once

#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "csbp/errors.hpp"

namespace csbp {

struct QuadResult {
  double value = 0.0;
  double abs_err = 0.0;
  long evals = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK qk15 constants)
inline constexpr double kGK15X[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kGK15WK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGK15WG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kGK15X[i]);
    fv[14 - i] = f(c + h * kGK15X[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 7; ++i) kron += kGK15WK[i] * (fv[i] + fv[14 - i]);
  kron += kGK15WK[7] * fv[7];
  for (int i = 0; i < 3; ++i) gauss += kGK15WG[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kGK15WG[3] * fv[7];
  kron *= h;
  gauss *= h;
  return {kron, std::fabs(kron - gauss)};
}

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Endpoint singularities are
// fine as long as they are integrable: GK15 has no endpoint nodes and the
// worst segment is bisected until the error budget is met.
template <class F>
QuadResult integrate(F&& f, double a, double b, double rel_tol,
                     double abs_tol = 0.0, int max_segments = 20000) {
  QuadResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<detail::Segment> heap;
  auto push = [&](double lo, double hi) {
    auto [v, e] = detail::gk15(f, lo, hi);
    res.evals += 15;
    heap.push({lo, hi, v, e});
    return std::pair{v, e};
  };
  auto [v0, e0] = push(a, b);
  double total = v0, toterr = e0;
  int nseg = 1;
  const double min_width = std::fabs(b - a) * 1e-15;
  while (toterr > std::max(rel_tol * std::fabs(total), abs_tol) &&
         nseg < max_segments) {
    detail::Segment worst = heap.top();
    if (worst.b - worst.a <= min_width) break;  // cannot refine further
    heap.pop();
    total -= worst.value;
    toterr -= worst.err;
    double mid = 0.5 * (worst.a + worst.b);
    auto [v1, e1] = push(worst.a, mid);
    auto [v2, e2] = push(mid, worst.b);
    total += v1 + v2;
    toterr += e1 + e2;
    ++nseg;
  }
  res.value = total;
  res.abs_err = toterr;
  res.converged = toterr <= std::max(rel_tol * std::fabs(total), abs_tol) ||
                  toterr <= 1e-300;
  return res;
}

// ∫_0^1 z^e f(z) dz for a known endpoint exponent e > -1 and f smooth on
// (0,1]. Substituting z = t^m with m = 2/(1+e) turns the weight into t and
// the integrand is regular at 0.
template <class F>
QuadResult integrate_power_weight(F&& f, double e, double rel_tol,
                                  int max_segments = 20000) {
  if (!(e > -1.0)) throw DomainError("integrate_power_weight: exponent must exceed -1");
  const double m = 2.0 / (1.0 + e);
  auto g = [&](double t) {
    double z = std::pow(t, m);
    return m * t * f(z);  // m * t^{m(1+e)-1} with m(1+e)-1 = 1
  };
  return integrate(g, 0.0, 1.0, rel_tol, 0.0, max_segments);
}

}  // namespace csbp
