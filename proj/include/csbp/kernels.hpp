#pragma once

#include <cstdint>

#include "csbp/rng.hpp"

namespace csbp::kernels {

// Sum of k Pareto-tail powers u_i^c (u_i uniforms drawn from rng, c in
// [-1,0)), the inner loop of the compensated-increment sampler. Three
// implementations of the same stream contract (k uniforms consumed, fixed
// 4-lane accumulation order):
//   - pareto_power_sum_ref:    std::pow, the reference semantics
//   - pareto_power_sum_scalar: fast_pow_unit, portable
//   - pareto_power_sum_avx2:   4-wide vector variant (x86 with AVX2+FMA)
// pareto_power_sum dispatches to the fastest available variant at runtime;
// the variants are equivalence-tested against the reference.
double pareto_power_sum(RngStream& rng, long k, double c);
double pareto_power_sum_ref(RngStream& rng, long k, double c);
double pareto_power_sum_scalar(RngStream& rng, long k, double c);

#if defined(__x86_64__)
bool avx2_available();
double pareto_power_sum_avx2(RngStream& rng, long k, double c);
#endif

}  // namespace csbp::kernels
