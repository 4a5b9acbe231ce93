#pragma once

// Centered integer Gaussian sampling with density proportional to
// exp(-pi x^2 / sigma^2); sigma is a Q32 rational S/2^32, S >= 2^32.
// Two engines behind one interface:
//
//  - sigma <= 2^20: exact inverse-CDF over a precomputed 128-bit cumulative
//    magnitude table truncated at |x| <= ceil(4 sigma) (discarded mass
//    < 2^-76), with a bucket guide that makes each lookup a short search;
//
//  - sigma in (2^20, 2^56]: rejection from the uniform band [-R, R],
//    R = ceil(4 sigma), accepting x with probability exactly
//    exp(-pi x^2/sigma^2): one 96-bit uniform is compared against a
//    fixed-point exponential; a precomputed step-table upper bound
//    short-circuits most rejections using the same uniform, which cannot
//    change the accept probability.
//
// All decisions are integer-only, so identical seeds give identical output
// on every platform.  Per-coordinate statistical distance from the ideal
// distribution is below 2^-75 in both engines (table: weight rounding and
// band truncation; rejection: fixed-point exponential error).

#include <vector>

#include "lpvss/common.hpp"
#include "lpvss/rng.hpp"

namespace lpvss {

class DiscreteGaussian {
 public:
  // Engine is overridable only so tests can cross-validate the two engines
  // on the same sigma; production callers use kAuto.
  enum class Engine { kAuto, kForceTable, kForceRejection };

  explicit DiscreteGaussian(u128 sigma_q32, Engine engine = Engine::kAuto);

  i128 sample(ChaChaRng& rng) const;
  std::vector<i128> sample_vec(ChaChaRng& rng, std::size_t n) const;

  // Resamples the whole vector until its squared norm is <= norm2_bound;
  // throws SamplingError once max_tries vectors were rejected.
  std::vector<i128> sample_vec_bounded(ChaChaRng& rng, std::size_t n,
                                       u128 norm2_bound,
                                       unsigned max_tries = 128) const;

  u128 sigma_q32() const { return s_q32_; }
  u64 radius() const { return radius_; }
  bool table_engine() const { return !cum_.empty(); }

  // Table internals, exposed for statistical tests and golden comparisons
  // (empty when the rejection engine is active).
  const std::vector<u128>& table_cum() const { return cum_; }
  u128 table_total() const { return total_all_; }

 private:
  void build_table();
  void build_rejection();
  i128 sample_table(ChaChaRng& rng) const;
  i128 sample_rejection(ChaChaRng& rng) const;

  u128 s_q32_ = 0;
  u64 radius_ = 0;  // ceil(4 sigma)

  // Table engine state.
  std::vector<u128> cum_;  // cum_[x] = total weight of magnitudes 0..x
  u128 total_all_ = 0;     // both signs counted
  u128 draw_limit_ = 0;    // 0 means "no rejection needed"
  struct Bucket {
    u32 lo, hi;
  };
  std::vector<Bucket> guide_;
  unsigned guide_shift_ = 0;

  // Rejection engine state.
  u128 span_ = 0;  // 2R + 1
  u128 span_limit_ = 0;
  u128 cconst_ = 0;   // floor(sqrt(pi) * 2^(96 + bitlen(S)) / S)
  unsigned tshift_ = 0;
  std::vector<u128> pretest_;  // upper bounds of e^{-y} on y-steps of 1/8
};

}  // namespace lpvss
