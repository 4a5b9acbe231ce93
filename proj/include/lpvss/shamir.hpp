#pragma once

// Shamir sharing over a prime field with dual-code verification.
//
// A share vector for threshold t is (f(1), ..., f(n)) for a polynomial f of
// degree <= t; the secret is f(0).  Such vectors form a Reed-Solomon code
// whose dual is generated by the columns of the parity matrix
//   H[i][j] = v_{i+1} * (i+1)^j,   j = 0 .. n-t-2,
// with v_i = prod_{k != i} (i - k)^{-1} mod p, so membership is the single
// linear condition w^T H = 0.  Verifiers never need the polynomial, only H.

#include <vector>

#include "lpvss/modmath.hpp"
#include "lpvss/rng.hpp"

namespace lpvss {

// Evaluations at 1..n of a uniformly random degree <= t polynomial with
// constant term `secret` (the shares of `secret`).
std::vector<u128> shamir_share(const Modulus& p, u32 n, u32 t, u128 secret,
                               ChaChaRng& rng);

// Evaluations at 1..n of a fully random degree <= t polynomial (every
// coefficient uniform).  Used as the code-masking part of commitments.
std::vector<u128> random_codeword(const Modulus& p, u32 n, u32 t,
                                  ChaChaRng& rng);

// The n x (n - t - 1) parity matrix described above.  t = n - 1 yields a
// zero-column matrix (every vector is a codeword).
Mat parity_matrix(const Modulus& p, u32 n, u32 t);

// w^T H == 0, i.e. w is a valid share vector for the threshold H encodes.
bool in_code(const Modulus& p, const Mat& h, const std::vector<u128>& w);

// Lagrange coefficients at zero for the given distinct 1-based points:
// f(0) = sum_i lambda_i f(points_i) for any polynomial of degree < #points.
std::vector<u128> lagrange_at_zero(const Modulus& p,
                                   const std::vector<u32>& points);

// sum_i lambda_i shares_i: the secret, when the points carry >= t+1 correct
// shares of a degree <= t polynomial.
u128 shamir_combine(const Modulus& p, const std::vector<u32>& points,
                    const std::vector<u128>& shares);

}  // namespace lpvss
