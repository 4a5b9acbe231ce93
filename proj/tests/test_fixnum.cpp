#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpvss/fixnum.hpp"

using namespace lpvss;

namespace {

// Frozen reference values from tools/oracles/fixnum_ref.py (mpmath, 80
// digits), all on the exact integer grids the implementation uses.
struct ExpPoint {
  const char* y_q96;
  const char* val_q96;
};
constexpr ExpPoint kExpPoints[] = {
    {"39614081257132168796771975168", "48054309677596482279189095253"},
    {"79228162514264337593543950336", "29146412150787779157341161346"},
    {"54916777467707472605031474174", "39614081257132169169826973645"},
    {"257491528171359097179017838592", "3072009239453532444579825296"},
    {"792281625142643375935439503360", "3596953013358336146105486"},
    {"3563682749891609904957606886113", "2313735913"},
    {"5538048559747077197788722128486", "0"},
};

struct LnPoint {
  u64 n;
  const char* val_q96;
};
constexpr LnPoint kLnPoints[] = {
    {2, "54916777467707473351141471128"},
    {3, "87041032946764879767665216853"},
    {17, "224470287260468208355274622743"},
    {1000, "547288757851964142270389815818"},
    {32000, "821872645190501509026097171458"},
    {32016, "821912249371538262904876587019"},
    {254080, "986026526878186775159172898552"},
    {(u64(1) << 25) + 12345, "1372948580139053152428445750116"},
};

u128 absdiff(u128 a, u128 b) { return a > b ? a - b : b - a; }

}  // namespace

TEST_CASE("pi constant matches the reference grid") {
  CHECK(fx::kPiQ96 == parse_u128("248902613312231085230521944622"));
}

TEST_CASE("exp(-y) matches mpmath on the Q96 grid") {
  for (const auto& pt : kExpPoints) {
    u128 y = parse_u128(pt.y_q96);
    u128 want = parse_u128(pt.val_q96);
    u128 got = fx::exp_neg_q96(y);
    CHECK(absdiff(got, want) <= 4);
  }
  CHECK(fx::exp_neg_q96(0) == (u128(1) << 96));
  CHECK(fx::exp_neg_q96(u128(70) << 96) == 0);
  CHECK(fx::exp_neg_q96(u128(5000) << 96) == 0);
}

TEST_CASE("exp(-y) is monotone and multiplicative") {
  u128 prev = fx::exp_neg_q96(0);
  for (int i = 1; i <= 64; ++i) {
    u128 y = (u128(i) << 96) / 10;  // y = i/10
    u128 cur = fx::exp_neg_q96(y);
    CHECK(cur < prev);
    prev = cur;
  }
  // exp(-a)*exp(-b) == exp(-(a+b)) up to grid rounding.
  u128 a = parse_u128("39614081257132168796771975168");   // 0.5
  u128 b = parse_u128("257491528171359097179017838592");  // 3.25
  u128 lhs = fx::mul_q96(fx::exp_neg_q96(a), fx::exp_neg_q96(b));
  u128 rhs = fx::exp_neg_q96(a + b);
  CHECK(absdiff(lhs, rhs) <= 8);
}

TEST_CASE("ln enclosures bracket the reference values") {
  for (const auto& pt : kLnPoints) {
    u128 f = parse_u128(pt.val_q96);  // floor(ln(n) * 2^96)
    auto [lo, hi] = fx::ln_int_q96(pt.n);
    CHECK(lo <= f);
    CHECK(hi >= f);
    CHECK(hi - lo <= 8);
  }
  CHECK_THROWS_AS(fx::ln_int_q96(1), LogicError);
}
