#pragma once

// Integer-only fixed-point transcendentals.  Everything statistical in this
// library (Gaussian acceptance decisions, rejection-filter probabilities,
// parameter derivation) must be bit-reproducible across platforms, so no
// floating point is used anywhere; probabilities live on a 96-fractional-bit
// grid (Q96) with Q120 internals.

#include "lpvss/common.hpp"

namespace lpvss::fx {

// floor(pi * 2^96)
inline constexpr u128 kPiQ96 =
    (u128(0x3243f6a88ull) << 64) | 0x85a308d313198a2eull;
// floor(pi * 2^120)
inline constexpr u128 kPiQ120 =
    (u128(0x3243f6a8885a308ull) << 64) | 0xd313198a2e037073ull;
// floor(sqrt(pi) * 2^96)
inline constexpr u128 kSqrtPiQ96 =
    (u128(0x1c5bf891bull) << 64) | 0x4ef6aa79c3b0520dull;

// (a * b) >> 96; caller guarantees the true product < 2^224.
u128 mul_q96(u128 a, u128 b);

// floor-level approximation of e^{-y} on the Q96 grid.  Relative error
// < 2^-94 plus one output ulp; returns 0 for y >= 70 (where the true value
// is below 2^-96 anyway).  Input is y >= 0 in Q96.
u128 exp_neg_q96(u128 y_q96);

// Full-precision variant on the Q120 grid (relative error < 2^-112), for
// consumers whose own error budget is tighter than Q96, e.g. the recurrence
// that builds Gaussian tables.  Requires y < 7 (all such uses have y < pi).
u128 exp_neg_q120(u128 y_q120);

// Rigorous enclosure of ln(n) on the Q96 grid, lo <= ln(n)*2^96 <= hi.
// The gap is a few Q96 ulp.  Requires n >= 2.
struct LnBounds {
  u128 lo, hi;
};
LnBounds ln_int_q96(u64 n);

}  // namespace lpvss::fx
