#pragma once

// 256-bit helper arithmetic on top of unsigned __int128.  Only what the
// modular layer, the fixed-point layer and the gadget decoder actually use:
// full 128x128 products, add/sub/shift/compare, and division by a 128-bit
// divisor (cold paths only).

#include "lpvss/common.hpp"

namespace lpvss::wide {

struct u256 {
  u64 w[4];  // w[0] least significant
};

inline u128 lo128(const u256& x) { return (u128(x.w[1]) << 64) | x.w[0]; }
inline u128 hi128(const u256& x) { return (u128(x.w[3]) << 64) | x.w[2]; }

inline u256 make(u128 hi, u128 lo) {
  return {{u64(lo), u64(lo >> 64), u64(hi), u64(hi >> 64)}};
}

inline u256 mul128(u128 a, u128 b) {
  u64 a0 = u64(a), a1 = u64(a >> 64);
  u64 b0 = u64(b), b1 = u64(b >> 64);
  u128 p00 = u128(a0) * b0;
  u128 p01 = u128(a0) * b1;
  u128 p10 = u128(a1) * b0;
  u128 p11 = u128(a1) * b1;
  u64 w0 = u64(p00);
  u128 mid = (p00 >> 64) + u64(p01) + u64(p10);
  u64 w1 = u64(mid);
  u128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + p11;
  return {{w0, w1, u64(hi), u64(hi >> 64)}};
}

inline u256 add(const u256& a, const u256& b) {
  u256 r;
  u128 c = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = u128(a.w[i]) + b.w[i] + c;
    r.w[i] = u64(s);
    c = s >> 64;
  }
  return r;
}

inline u256 sub(const u256& a, const u256& b) {  // a - b mod 2^256
  u256 r;
  u128 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = u128(a.w[i]) - b.w[i] - borrow;
    r.w[i] = u64(d);
    borrow = (d >> 64) ? 1 : 0;
  }
  return r;
}

inline int cmp(const u256& a, const u256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
  }
  return 0;
}

inline bool bit(const u256& x, unsigned i) {
  return (x.w[i >> 6] >> (i & 63)) & 1;
}

inline u256 shl(const u256& x, unsigned k) {
  u256 r{{0, 0, 0, 0}};
  if (k >= 256) return r;
  unsigned limb = k >> 6, off = k & 63;
  for (int i = 3; i >= 0; --i) {
    u64 v = 0;
    int src = i - int(limb);
    if (src >= 0) v = x.w[src] << off;
    if (off && src - 1 >= 0) v |= x.w[src - 1] >> (64 - off);
    r.w[i] = v;
  }
  return r;
}

inline u256 shr(const u256& x, unsigned k) {
  u256 r{{0, 0, 0, 0}};
  if (k >= 256) return r;
  unsigned limb = k >> 6, off = k & 63;
  for (int i = 0; i < 4; ++i) {
    u64 v = 0;
    unsigned src = i + limb;
    if (src < 4) v = x.w[src] >> off;
    if (off && src + 1 < 4) v |= x.w[src + 1] << (64 - off);
    r.w[i] = v;
  }
  return r;
}

struct DivResult {
  u256 quot;
  u128 rem;
};

// Binary long division; ~256 iterations, used only in cold setup paths.
inline DivResult divmod(const u256& x, u128 d) {
  if (d == 0) throw LogicError("divmod: zero divisor");
  u256 q{{0, 0, 0, 0}};
  u128 r = 0;
  for (int i = 255; i >= 0; --i) {
    bool carry = (r >> 127) & 1;  // true value of r<<1 may exceed 128 bits
    u128 r2 = (r << 1) | u128(bit(x, unsigned(i)));
    if (carry || r2 >= d) {
      r2 -= d;  // correct mod 2^128 even when the shift carried out
      q.w[i >> 6] |= u64(1) << (i & 63);
    }
    r = r2;
  }
  return {q, r};
}

inline u128 mod(const u256& x, u128 d) { return divmod(x, d).rem; }

// floor(sqrt(x)) by downward bit fitting.
inline u128 isqrt(u128 x) {
  u128 r = 0;
  for (int s = 63; s >= 0; --s) {
    u128 t = r | (u128(1) << s);
    if (t <= x / t) r = t;  // t*t <= x without overflow
  }
  return r;
}

}  // namespace lpvss::wide
