#pragma once

// Residue arithmetic mod q for q up to 2^126, plus the vector/matrix
// helpers the rest of the library is built on.  Two regimes, picked once
// per modulus:
//   - q <= 2^64: plain 128-bit products and hardware remainder;
//   - odd q in (2^64, 2^126): Montgomery multiplication with R = 2^128.
// Large even moduli are rejected; they never occur here (large moduli are
// odd prime squares, small ones come from test fields).

#include <optional>
#include <vector>

#include "lpvss/common.hpp"

namespace lpvss {

struct Modulus {
  u128 q = 0;
  bool mont = false;
  u128 qinv_neg = 0;  // -q^{-1} mod 2^128          (Montgomery only)
  u128 r1 = 0;        // 2^128 mod q = to_mont(1)   (Montgomery only)
  u128 r2 = 0;        // 2^256 mod q                (Montgomery only)

  Modulus() = default;
  explicit Modulus(u128 modulus);

  u128 reduce(u128 x) const { return x % q; }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;  // both < q <= 2^126, no wrap
    return s >= q ? s - q : s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (q - b); }
  u128 neg(u128 a) const { return a == 0 ? 0 : q - a; }

  // Plain-domain product; one Montgomery round trip in the large regime.
  u128 mul(u128 a, u128 b) const {
    return mont ? mont_mul(to_mont(a), b) : (a * b) % q;
  }

  u128 mont_mul(u128 a, u128 b) const;
  u128 to_mont(u128 a) const { return mont_mul(a, r2); }
  u128 from_mont(u128 a) const { return mont_mul(a, 1); }

  u128 pow(u128 a, u128 e) const;
  u128 inv(u128 a) const;  // extended gcd; throws if not invertible
};

// Centered representative in [-(q-1)/2, (q-1)/2] for odd q (and
// (-q/2, q/2] for even q): the unique lift of smallest magnitude.
i128 center_lift(u128 x, u128 q);
u128 from_centered(i128 v, u128 q);

// Sum of squares of centered entries.  Returns nullopt if any |entry|
// >= 2^56 (verification callers treat that as "bound exceeded"); the sum
// then always fits in u128 for up to 2^14 entries.
std::optional<u128> norm2_checked(const i128* v, std::size_t n);
inline std::optional<u128> norm2_checked(const std::vector<i128>& v) {
  return norm2_checked(v.data(), v.size());
}

// floor(sqrt(norm2)): the integer Euclidean length used in reports.
u128 l2_floor(u128 norm2);

unsigned bitlen_u128(u128 x);

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<u128> a;  // row-major

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  u128& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const u128& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

// y = A x mod q.  In the Montgomery regime x is converted once, so the cost
// is rows*cols single Montgomery products.
std::vector<u128> mat_vec(const Modulus& m, const Mat& A,
                          const std::vector<u128>& x);

// y = x^T A mod q (row combination; same per-entry cost as mat_vec, no
// transpose materialized).
std::vector<u128> vec_mat(const Modulus& m, const std::vector<u128>& x,
                          const Mat& A);

// <a, b> mod q.
u128 dot(const Modulus& m, const std::vector<u128>& a,
         const std::vector<u128>& b);

// Fixed-width little-endian lowercase hex for residue vectors; each residue
// occupies ceil(bitlen(q)/8) bytes.
std::string residues_to_hex(const Modulus& m, const std::vector<u128>& v);
std::vector<u128> residues_from_hex(const Modulus& m, const std::string& hex,
                                    std::size_t count);

}  // namespace lpvss
