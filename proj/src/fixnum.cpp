#include "lpvss/fixnum.hpp"

#include "lpvss/wide.hpp"

namespace lpvss::fx {

namespace {

// floor(ln2 * 2^120) and floor(2^120 / ln2)
constexpr u128 kLn2Q120 =
    (u128(0xb17217f7d1cf79ull) << 64) | 0xabc9e3b39803f2f6ull;
constexpr u128 kInvLn2Q120 =
    (u128(0x171547652b82fe1ull) << 64) | 0x777d0ffda0d23a7dull;

inline u128 mul_q120(u128 a, u128 b) {
  return wide::lo128(wide::shr(wide::mul128(a, b), 120));
}

// floor(2^120 / i!) for i = 0..27.  27 terms leaves a Taylor tail below
// 2^-107 on [0, ln2).
struct InvFactTable {
  u128 c[28];
  InvFactTable() {
    u128 fact = 1;
    c[0] = u128(1) << 120;
    for (int i = 1; i < 28; ++i) {
      fact *= u128(i);
      c[i] = (u128(1) << 120) / fact;
    }
  }
};
const InvFactTable kInvFact;

}  // namespace

u128 mul_q96(u128 a, u128 b) {
  return wide::lo128(wide::shr(wide::mul128(a, b), 96));
}

namespace {

// e^{-y} at Q120 for y in Q120: range-reduce by ln2, then an alternating
// Taylor Horner whose tails are all positive and below 1, so unsigned Q120
// arithmetic with floor rounding is safe.  Returns the mantissa in (1/2, 1]
// as Q120 along with the binary exponent k.
struct ExpCore {
  u128 mant;
  u128 k;
};

ExpCore exp_neg_core(u128 y) {
  u128 k = wide::lo128(wide::shr(wide::mul128(y, kInvLn2Q120), 240));
  u128 kl = k * kLn2Q120;  // k <= 102 so this fits u128
  if (kl > y) {            // floor error pushed k one too high
    --k;
    kl -= kLn2Q120;
  }
  u128 r = y - kl;
  while (r >= kLn2Q120) {
    r -= kLn2Q120;
    ++k;
  }
  u128 acc = kInvFact.c[27];
  for (int i = 26; i >= 0; --i) {
    acc = kInvFact.c[i] - mul_q120(r, acc);
  }
  return {acc, k};
}

}  // namespace

u128 exp_neg_q96(u128 y_q96) {
  if (y_q96 >= (u128(70) << 96)) return 0;
  ExpCore c = exp_neg_core(y_q96 << 24);  // y < 70*2^120 < 2^127
  unsigned shift = 24 + unsigned(c.k);
  if (shift >= 128) return 0;
  return c.mant >> shift;
}

u128 exp_neg_q120(u128 y_q120) {
  require(y_q120 < (u128(7) << 120), "exp_neg_q120: argument too large");
  ExpCore c = exp_neg_core(y_q120);
  return c.mant >> unsigned(c.k);
}

LnBounds ln_int_q96(u64 n) {
  require(n >= 2, "ln_int_q96: n must be >= 2");
  unsigned s = 63;
  while (!(n >> s)) --s;  // 2^s <= n < 2^(s+1)
  // ln n = s*ln2 + 2*atanh(z), z = (n - 2^s) / (n + 2^s) in [0, 1/3).
  u64 num = n - (u64(1) << s);
  u128 den = u128(n) + (u128(1) << s);
  u128 z = wide::lo128(wide::divmod(wide::shl(wide::make(0, num), 96), den).quot)
           << 24;  // Q120, floored

  // atanh(z) = sum z^(2k+1)/(2k+1); z < 1/3 so 40 odd powers reach 2^-126.
  u128 zsq = mul_q120(z, z);
  u128 pow = z;
  u128 sum = z;
  for (int k = 1; k < 40; ++k) {
    pow = mul_q120(pow, zsq);
    sum += pow / u128(2 * k + 1);
  }
  u128 ln_frac = 2 * sum;  // < 2*atanh(1/3) = ln 2, fits easily

  u128 mid = (u128(s) * kLn2Q120 + ln_frac) >> 24;  // Q96
  // Error budget: ~80 floored Q120 multiplies, the floored z division and
  // the series tail together stay far below 2^-100 relative; one Q96 ulp of
  // slack in each direction is a generous rigorous enclosure, use four.
  return {mid - 4, mid + 4};
}

}  // namespace lpvss::fx
