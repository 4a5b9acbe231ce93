#pragma once

// Scheme-wide scalar ledger: modulus pair (p, q = p^2), matrix shape, noise
// widths, every verification bound, and the proof-filter constants, all
// derived from four knobs (n participants, threshold t, secret dimension v,
// repetition count) by one deterministic integer chain.
//
// The chain, with every asymptotic constant pinned:
//   alpha q   = ceil(sqrt(v))
//   k = ceil(log2 q), u0 = v, u = v (k + 1)        (matrix shape)
//   r_w       = ceil(log2 u) + 1
//   beta q    = ceil(sqrt(u)) ceil(log2 u) (2 alpha q + 1) / 2   (kept x2)
//   sigma_key = ceil over (5/2) sqrt(rep (B^key_s^2 + B^key_e^2) ln(rep (u+v)))
//   B*_key    = 2 sqrt(u+v) sigma_key              (stored squared, exact)
//   sigma_enc = ceil over sqrt(rep n (B^enc_e^2 + B^enc_r^2) ln(rep n (u+1)))
//   B*_enc_f  = floor(2 sigma_enc sqrt(u+1) (B*_key_e + 1)) + 1
//   sigma_dec = ceil over sqrt(rep (2 B*_key^2 + B*_enc_f^2) ln(rep (u+v+1)))
//   B*_dec    = 2 sqrt(u+v+1) sigma_dec            (stored squared, exact)
//   ln M      = 1/L + 12/L^2 at L = ln(rep * bundle dim), Q96
// and p is the least prime for which the whole inequality ledger holds:
// injectivity margins B*^2 * 16 v ceil(log2 p) <= q for key and dec, both
// B*_enc_f and B*_dec below p/2, the decrypt-noise sandwich, and the
// encryption correctness margin.  Square roots of integers are carried as
// exact squared values; ln as rigorous Q96 enclosures (lower bounds for the
// filter constants, upper bounds inside sigma), so every inequality here is
// decided in exact integer arithmetic and validate() can re-check it.

#include <string>
#include <vector>

#include "lpvss/common.hpp"
#include "lpvss/modmath.hpp"

namespace lpvss {

struct ParamRequest {
  u32 n = 0;
  u32 t = 0;
  u32 v = 0;
  u32 lambda_rep = 0;
  u32 max_q_bits = 128;
};

struct ParamSet {
  u32 n = 0, t = 0, v = 0, lambda_rep = 0;
  u128 p = 0, q = 0;
  u32 u = 0, k = 0, u0 = 0;
  u64 alpha_q = 0, beta_q_x2 = 0, r_w = 0;
  u128 sigma_key_q32 = 0, sigma_enc_q32 = 0, sigma_dec_q32 = 0;
  u128 b_key_star2 = 0;   // (2 sqrt(u+v) sigma_key)^2, exact
  u128 b_enc_f = 0;       // scalar bound, exact integer
  u128 b_dec_star2 = 0;   // (2 sqrt(u+v+1) sigma_dec)^2, exact
  u128 lnm_key_q96 = 0, lnm_enc_q96 = 0, lnm_dec_q96 = 0;

  // Integer widths (the q32 fields always carry zero fraction).
  u128 sigma_key() const { return sigma_key_q32 >> 32; }
  u128 sigma_enc() const { return sigma_enc_q32 >> 32; }
  u128 sigma_dec() const { return sigma_dec_q32 >> 32; }

  // Squared norm gates, all exact integers.
  u128 keygen_s2() const;        // || s || < sqrt(v) alpha q   (strict)
  u128 keygen_e2() const;        // || e || < sqrt(u) alpha q   (strict)
  u128 enc_r2() const;           // || r || <= sqrt(u) r_w
  u128 enc_e2_x4() const;        // 4 e^2 <= v beta_q_x2^2
  u128 key_sig_norm2() const;    // (u+v) sigma_key^2
  u128 enc_sig_norm2() const;    // (u+1) sigma_enc^2
  u128 dec_sig_norm2() const;    // (u+v+1) sigma_dec^2
  u128 b_key_star_floor() const; // floor(2 sqrt(u+v) sigma_key)
};

// Deterministic Miller-Rabin, exact for any x < 3.3e24 (all x used here).
bool mr_is_prime(u128 x);

// Least workable prime ledger for the request; ConfigError with message
// "parameters infeasible at requested cap" if no p fits under max_q_bits.
ParamSet derive_params(const ParamRequest& req);

// Named violations, empty iff the ledger is exactly the one derive would
// produce for (n, t, v, lambda_rep, p) and every inequality holds.
std::vector<std::string> validate_params(const ParamSet& ps);

// Human-readable config ("key = value", decimal), stable order.
std::string param_set_to_config(const ParamSet& ps);

// Strict inverse: required header, every key exactly once, no unknown keys.
ParamSet param_set_from_config(const std::string& text);

}  // namespace lpvss
