#pragma once

// Scalar LWE encryption over the modulus pair (p, q = p^2).  Messages live
// in Z_p; a ciphertext is (c1, c2) with c1 = A r and c2 = b r + e + p m
// mod q; decryption under the secret row s returns the message together
// with a small signed witness f satisfying
//
//     c2 - s^T c1 = p m + f (mod q),   f centered mod p,
//
// which is exactly the identity the proof layer later asks the receiver to
// open.  Key generation resamples (s, e) until both are strictly inside the
// honest radii; key verification accepts anything within the relaxed radius
// B*, which covers every honest key with margin as well as everything a
// proof-of-knowledge extractor can be forced to emit.  Decryption is total
// and never errors: under any key pair that passes verification and any
// honestly bounded encryption randomness, the derived parameter ledger
// guarantees |f| stays below half of p, so the message round-trips; garbage
// inputs simply produce a wrong message, and detection is the proof layer's
// job.

#include <utility>
#include <vector>

#include "lpvss/modmath.hpp"
#include "lpvss/params.hpp"
#include "lpvss/rng.hpp"
#include "lpvss/sampler.hpp"

namespace lpvss {

struct KeyPair {
  std::vector<u128> b;  // public row, length u, entries mod q
  std::vector<i128> s;  // secret, length v, ||s||^2 < keygen_s2
  std::vector<i128> e;  // noise, length u, ||e||^2 < keygen_e2 (kept as a
                        // proof witness)
};

struct Ciphertext {
  std::vector<u128> c1;  // length v, entries mod q
  u128 c2 = 0;
};

struct EncWitness {
  std::vector<i128> r;  // length u, ||r||^2 <= enc_r2
  i128 e = 0;           // scalar noise, 4 e^2 <= enc_e2_x4
};

struct DecResult {
  u128 m = 0;  // residue mod p
  i128 f = 0;  // centered mod p
};

// Modulus plus the three noise samplers, built once per parameter set (the
// sampler tables are the expensive part).
struct PkeContext {
  ParamSet ps;
  Modulus mq;             // mod q
  DiscreteGaussian w_key; // width alpha q, for (s, e)
  DiscreteGaussian w_r;   // width r, for encryption randomness
  DiscreteGaussian w_e;   // width beta q (a half-integer), scalar noise

  explicit PkeContext(const ParamSet& ps);
};

// Uniform v x u matrix from the rng (the proof layer instead adopts the
// trapdoor matrix, which is statistically close to uniform).
Mat pke_uniform_matrix(const PkeContext& ctx, ChaChaRng& rng);

// Sample (s, e) strictly inside the honest radii and publish b = s^T A + e^T.
KeyPair pke_keygen(const PkeContext& ctx, const Mat& a, ChaChaRng& rng);

// Accept iff ||b - s^T A|| (centered) and ||s|| are within the relaxed
// radius (b_key_star2, squared) on both coordinates.
bool pke_keyver(const PkeContext& ctx, const Mat& a,
                const std::vector<u128>& b, const std::vector<i128>& s);

// Encrypt m in [0, p); the randomness (r, e) is returned for proof use.
std::pair<Ciphertext, EncWitness> pke_enc(const PkeContext& ctx, const Mat& a,
                                          const std::vector<u128>& b, u128 m,
                                          ChaChaRng& rng);

// Total: split c2 - s^T c1 as p m + f with f centered mod p.  The returned
// pair always satisfies the witness identity (hard internal assertion).
DecResult pke_dec(const PkeContext& ctx, const Ciphertext& ct,
                  const std::vector<i128>& s);

}  // namespace lpvss
