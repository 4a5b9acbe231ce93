#include "lpvss/reject.hpp"

#include "lpvss/fixnum.hpp"
#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

constexpr u128 kMask96 = (u128(1) << 96) - 1;
constexpr u128 kOneQ96 = u128(1) << 96;
// Magnitude cap for the Q96 exponent; anything this large is far past the
// point where exp_neg_q96 underflows to zero, so capping cannot change a
// decision.
constexpr u128 kSatQ96 = u128(1) << 110;

}  // namespace

i128 reject_t_stat(const std::vector<i128>& z, const std::vector<i128>& shift) {
  require(z.size() == shift.size(), "reject_t_stat: length mismatch");
  const i128 entry_cap = i128(1) << 60;
  const i128 sum_cap = i128(1) << 124;
  i128 dot = 0;
  i128 n2 = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const i128 a = z[i];
    const i128 b = shift[i];
    require(a > -entry_cap && a < entry_cap && b > -entry_cap && b < entry_cap,
            "reject_t_stat: entry too large");
    dot += a * b;
    n2 += b * b;
    require(dot > -sum_cap && dot < sum_cap && n2 < sum_cap,
            "reject_t_stat: accumulator overflow");
  }
  return 2 * dot - n2;
}

u128 reject_threshold_q96(i128 t_stat, u128 sigma, u128 lnm_q96) {
  require(sigma > 0, "reject_threshold: zero sigma");
  require(sigma < (u128(1) << 62), "reject_threshold: sigma too large");
  require(lnm_q96 < kSatQ96, "reject_threshold: lnm out of range");
  const u128 t_abs = t_stat < 0 ? u128(-t_stat) : u128(t_stat);
  const wide::DivResult qr = wide::divmod(wide::mul128(fx::kPiQ96, t_abs),
                                          sigma * sigma);
  u128 mag = wide::hi128(qr.quot) != 0 ? kSatQ96 : wide::lo128(qr.quot);
  if (mag > kSatQ96) mag = kSatQ96;
  if (t_stat >= 0) return fx::exp_neg_q96(lnm_q96 + mag);
  if (mag >= lnm_q96) return kOneQ96;
  return fx::exp_neg_q96(lnm_q96 - mag);
}

bool reject_filter(ChaChaRng& rng, const std::vector<i128>& z,
                   const std::vector<i128>& shift, u128 sigma, u128 lnm_q96) {
  const u128 thr = reject_threshold_q96(reject_t_stat(z, shift), sigma,
                                        lnm_q96);
  return (rng.next_u128() & kMask96) < thr;
}

bool release_coin(ChaChaRng& rng, u128 lnm_q96) {
  require(lnm_q96 < kSatQ96, "release_coin: lnm out of range");
  return (rng.next_u128() & kMask96) < fx::exp_neg_q96(lnm_q96);
}

}  // namespace lpvss
