#include "lpvss/sampler.hpp"

#include "lpvss/fixnum.hpp"
#include "lpvss/modmath.hpp"
#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

constexpr u128 kTableMaxS = u128(1) << 52;  // sigma <= 2^20
constexpr u128 kMaxS = u128(1) << 88;       // sigma <= 2^56

// Largest multiple of `n` representable in 128 bits, as a rejection
// threshold; 0 means every draw is usable.
u128 draw_threshold(u128 n) {
  u128 rem = wide::mod(wide::make(1, 0), n);
  return rem == 0 ? 0 : u128(0) - rem;
}

}  // namespace

DiscreteGaussian::DiscreteGaussian(u128 sigma_q32, Engine engine)
    : s_q32_(sigma_q32) {
  if (s_q32_ < (u128(1) << 32)) throw ConfigError("sigma must be >= 1");
  if (s_q32_ > kMaxS) throw ConfigError("sigma must be <= 2^56");
  radius_ = u64((4 * s_q32_ + ((u128(1) << 32) - 1)) >> 32);
  bool table;
  switch (engine) {
    case Engine::kAuto:
      table = s_q32_ <= kTableMaxS;
      break;
    case Engine::kForceTable:
      if (s_q32_ > kTableMaxS) {
        throw ConfigError("table engine limited to sigma <= 2^20");
      }
      table = true;
      break;
    case Engine::kForceRejection:
      table = false;
      break;
    default:
      throw LogicError("bad engine");
  }
  if (table) {
    build_table();
  } else {
    build_rejection();
  }
}

void DiscreteGaussian::build_table() {
  // Weight of magnitude x is rho(x) = r^(x^2), r = exp(-pi/sigma^2),
  // accumulated by the recurrence rho(x+1) = rho(x) * r^(2x+1) in Q120 and
  // then floored to a scale that keeps the grand total under 2^127.
  u128 s2 = s_q32_ * s_q32_;  // S <= 2^52, fits
  u128 y_q120 =
      wide::lo128(wide::divmod(wide::shl(wide::make(0, fx::kPiQ120), 64), s2)
                      .quot);
  u128 r = fx::exp_neg_q120(y_q120);
  u128 r2 = wide::lo128(wide::shr(wide::mul128(r, r), 120));

  // Weight scale: as large as fits (total stays < 2^127 because the table
  // has < 2^{bitlen+1} entries of < 2^w_scale each), but never beyond the
  // 120 fractional bits the recurrence actually carries.
  unsigned w_scale = 125 - bitlen_u128(radius_);
  if (w_scale > 120) w_scale = 120;
  unsigned down = 120 - w_scale;
  cum_.assign(radius_ + 1, 0);
  cum_[0] = u128(1) << w_scale;
  u128 rho = u128(1) << 120;
  u128 step = r;
  for (u64 x = 1; x <= radius_; ++x) {
    rho = wide::lo128(wide::shr(wide::mul128(rho, step), 120));
    step = wide::lo128(wide::shr(wide::mul128(step, r2), 120));
    cum_[x] = cum_[x - 1] + (rho >> down);
  }
  total_all_ = 2 * cum_[radius_] - cum_[0];
  draw_limit_ = draw_threshold(total_all_);

  u128 range = cum_[radius_] - cum_[0];
  require(range > 0, "gaussian table has no positive-magnitude mass");
  unsigned rb = bitlen_u128(range);
  guide_shift_ = rb > 9 ? rb - 9 : 0;
  std::size_t nbuckets = std::size_t(((range - 1) >> guide_shift_) + 1);
  guide_.assign(nbuckets, {u32(-1), 0});
  for (u64 x = 1; x <= radius_; ++x) {
    if (cum_[x] == cum_[x - 1]) continue;  // zero weight, unreachable
    std::size_t b0 = std::size_t((cum_[x - 1] - cum_[0]) >> guide_shift_);
    std::size_t b1 = std::size_t((cum_[x] - cum_[0] - 1) >> guide_shift_);
    for (std::size_t b = b0; b <= b1; ++b) {
      if (u32(x) < guide_[b].lo) guide_[b].lo = u32(x);
      if (u32(x) > guide_[b].hi) guide_[b].hi = u32(x);
    }
  }
  // The magnitude intervals tile the key space, so no bucket can be empty.
  for (const Bucket& b : guide_) require(b.lo <= b.hi, "guide bucket gap");
}

void DiscreteGaussian::build_rejection() {
  span_ = 2 * u128(radius_) + 1;
  span_limit_ = draw_threshold(span_);
  unsigned b = bitlen_u128(s_q32_);  // >= 33
  cconst_ = wide::lo128(
      wide::divmod(wide::shl(wide::make(0, fx::kSqrtPiQ96), b), s_q32_).quot);
  tshift_ = b - 24;
  // pretest_[j] >= exp(-y) for every y >= j/8; +16 covers the fixed-point
  // error of the exponential itself.
  pretest_.resize(561);
  for (unsigned j = 0; j < 561; ++j) {
    pretest_[j] = fx::exp_neg_q96(u128(j) << 93) + 16;
  }
}

i128 DiscreteGaussian::sample(ChaChaRng& rng) const {
  return table_engine() ? sample_table(rng) : sample_rejection(rng);
}

i128 DiscreteGaussian::sample_table(ChaChaRng& rng) const {
  u128 raw;
  do {
    raw = rng.next_u128();
  } while (draw_limit_ != 0 && raw >= draw_limit_);
  u128 v = raw % total_all_;
  if (v < cum_[0]) return 0;
  v -= cum_[0];
  bool neg = v & 1;
  u128 key = (v >> 1) + cum_[0];
  const Bucket& bk = guide_[std::size_t((key - cum_[0]) >> guide_shift_)];
  u64 lo = bk.lo, hi = bk.hi;  // first x with cum_[x] > key lies in [lo,hi]
  while (lo < hi) {
    u64 mid = lo + (hi - lo) / 2;
    if (cum_[mid] > key) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return neg ? -i128(lo) : i128(lo);
}

i128 DiscreteGaussian::sample_rejection(ChaChaRng& rng) const {
  for (int tries = 0; tries < 10000; ++tries) {
    u128 raw = rng.next_u128();
    if (span_limit_ != 0 && raw >= span_limit_) continue;
    u128 v = raw % span_;
    i128 x = i128(v) - i128(radius_);
    u128 mag = x < 0 ? u128(0) - u128(x) : u128(x);
    // y = pi mag^2 / sigma^2 on the Q96 grid, via one scaled product:
    // t = mag * sqrt(pi) * 2^120 / S, then y = t^2 >> 80.
    u128 t = wide::lo128(wide::shr(wide::mul128(mag, cconst_), tshift_));
    u128 y = wide::lo128(wide::shr(wide::mul128(t, t), 80));
    u128 j = y >> 93;  // floor(8y)
    if (j >= pretest_.size()) continue;  // acceptance below 2^-96: reject
    u128 u = rng.next_u128() >> 32;      // 96-bit uniform
    if (u >= pretest_[std::size_t(j)]) continue;  // certain rejection
    if (u < fx::exp_neg_q96(y)) return x;
  }
  throw SamplingError("band rejection sampler stalled");
}

std::vector<i128> DiscreteGaussian::sample_vec(ChaChaRng& rng,
                                               std::size_t n) const {
  std::vector<i128> out(n);
  for (auto& x : out) x = sample(rng);
  return out;
}

std::vector<i128> DiscreteGaussian::sample_vec_bounded(ChaChaRng& rng,
                                                       std::size_t n,
                                                       u128 norm2_bound,
                                                       unsigned max_tries) const {
  for (unsigned t = 0; t < max_tries; ++t) {
    std::vector<i128> v = sample_vec(rng, n);
    auto nn = norm2_checked(v);
    if (nn && *nn <= norm2_bound) return v;
  }
  throw SamplingError("norm-bounded Gaussian vector: retry budget exhausted");
}

}  // namespace lpvss
