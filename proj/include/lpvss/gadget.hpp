#pragma once

// Public matrices with a planted inversion trapdoor.
//
// keygen draws a uniform left block Abar (v x u0) and a small secret matrix
// R (u0 x v*k, Gaussian width 5), then publishes
//     A = [ Abar | G - Abar R ],   G = I_v (x) (1, 2, 4, ..., 2^{k-1}),
// k = ceil(log2 q), q odd.  Given b^T = s^T A + e^T with small e, the holder
// of R computes c^T = b1^T + bbar^T R = s^T G + e'^T, e' = R^T ebar + e1,
// and strips G blockwise by exact integer arithmetic:
//     d_j = centered(2 c_j - c_{j+1}) = 2 e'_j - e'_{j+1}
//     w   = centered(<bits(q), c>)   = <bits(q), e'>
//     e'_1 = (w + sum_i d_i floor(q/2^i)) / q      (exact division)
// which is guaranteed exact while each k-block of e' has L2 norm at most
// block_radius = floor(q / (2 ceil(sqrt(k)))).  That pulls back to the bound
// noise_radius on ||e|| via the coupling of R's columns.  Inversion recomputes
// e = centered(b - s^T A) over the whole row and accepts only if
// ||e|| <= noise_radius, so a returned solution is always genuine.

#include <optional>
#include <vector>

#include "lpvss/modmath.hpp"
#include "lpvss/rng.hpp"

namespace lpvss {

struct Gadget {
  Modulus mod;       // odd q >= 3, q < 2^125
  u32 v = 0;         // rows of A
  u32 k = 0;         // ceil(log2 q)
  u32 u0 = 0;        // width of the uniform block
  u32 u = 0;         // u0 + v k, total columns
  Mat a;             // v x u
  Mat a_t;           // u x v (transpose, for s^T A products)
  Mat r_cols;        // (v k) x u0: row j holds column j of R as residues
  std::vector<i64> r_signed;  // R entries, row-major u0 x (v k)
  u128 block_radius = 0;  // see above
  u128 coupling2 = 0;     // max over blocks of sum_j (||R col_j||^2 + 1)
  u128 noise_radius = 0;  // block_radius / ceil(sqrt(coupling2))

  const i64& r_at(u32 row, u32 col) const { return r_signed[row * (v * k) + col]; }
};

Gadget gadget_keygen(u128 q, u32 v, u32 u0, ChaChaRng& rng);

// b^T = s^T A + e^T  ->  (s, e), or nullopt when no solution with
// ||e|| <= noise_radius is found.  Success guarantees the returned pair
// satisfies the equation exactly with that norm bound.
struct GadgetInverse {
  std::vector<u128> s;
  std::vector<i128> e;
};
std::optional<GadgetInverse> gadget_invert(const Gadget& g,
                                           const std::vector<u128>& b);

// One k-block: c_j = s 2^j + e_j mod q (j = 0..k-1) -> (s, e), or nullopt
// if the exact-division reconstruction fails.  Success guarantees the
// decomposition identity but implies nothing about the size of e; it is
// the unique small solution whenever ||e|| <= block_radius.
struct BlockDecode {
  u128 s;
  std::vector<i128> e;
};
std::optional<BlockDecode> gblock_decode(const Modulus& mod, u32 k,
                                         const u128* c);

// Exact ||e||^2 <= bound^2 over centered entries, with 256-bit accumulation
// (entries may be as large as q/2).
bool norm_within(const std::vector<i128>& e, u128 bound);

}  // namespace lpvss
