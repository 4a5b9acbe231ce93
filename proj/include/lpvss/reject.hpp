#pragma once

// Shifted-Gaussian rejection filter.
//
// A prover's candidate response z is sampled around a secret shift v (the
// challenge times the witness); releasing it unfiltered would leak v.  The
// filter accepts with probability min(rho(z) / (M * rho_v(z)), 1), where
// rho is the zero-centered Gaussian of width sigma and rho_v its shift by
// v, so that the released distribution is exactly the zero-centered one
// and the overall release rate is 1/M.  The whole decision depends on z
// and v only through the integer statistic
//
//     T = 2<z, v> - ||v||^2,
//
// giving acceptance probability min(exp(-(pi*T/sigma^2 + lnM)), 1).  All
// arithmetic is on the Q96 grid: one uniform 96-bit draw per call (the
// call always consumes exactly 16 bytes of the stream), compared against
// exp_neg of the exponent.  With v = 0 the statistic vanishes and the
// filter degenerates to a plain Bernoulli(1/M) release coin, which is how
// simulators thin their output to match the prover's release rate.

#include <vector>

#include "lpvss/common.hpp"
#include "lpvss/rng.hpp"

namespace lpvss {

// 2<z,shift> - ||shift||^2 over the integers.  Entries must be below 2^60
// in magnitude and intermediate sums below 2^124 (far beyond anything the
// protocols produce); violations throw LogicError.
i128 reject_t_stat(const std::vector<i128>& z, const std::vector<i128>& shift);

// Q96 acceptance threshold for the statistic: 2^96 means accept surely.
// sigma is the integer Gaussian width, lnm_q96 the Q96 upper bound on ln M.
u128 reject_threshold_q96(i128 t_stat, u128 sigma, u128 lnm_q96);

// One filter decision: draws 96 uniform bits from rng and compares against
// the threshold for (z, shift).
bool reject_filter(ChaChaRng& rng, const std::vector<i128>& z,
                   const std::vector<i128>& shift, u128 sigma, u128 lnm_q96);

// The zero-shift release coin: accept with probability exp(-lnM).
bool release_coin(ChaChaRng& rng, u128 lnm_q96);

}  // namespace lpvss
