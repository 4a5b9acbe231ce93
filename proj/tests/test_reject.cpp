// Rejection filter: frozen integer statistics and thresholds, a pinned
// decision sequence, release-rate statistics at both parameter tiers, and
// the no-mean-leak property of released shifted samples.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "lpvss/reject.hpp"
#include "lpvss/fixnum.hpp"
#include "lpvss/params.hpp"
#include "lpvss/sampler.hpp"

using namespace lpvss;

namespace {

constexpr u128 kOneQ96 = u128(1) << 96;

// Widths and lnM for the small working tier (n=5, t=2, v=2, 16 repetitions).
ParamSet toy() { return derive_params({5, 2, 2, 16}); }

double q96_to_double(u128 x) {
  return std::ldexp(double(u64(x >> 64)), -32) + std::ldexp(double(u64(x)), -96);
}

}  // namespace

TEST_CASE("statistic and threshold match the frozen reference decisions") {
  const ParamSet ps = toy();
  REQUIRE(ps.sigma_key() == 781);
  const u128 lnm = parse_u128("24662009292699742528856702657");
  REQUIRE(ps.lnm_key_q96 == lnm);
  const u128 sigma = ps.sigma_key();

  const std::vector<i128> z1 = {3, -7, 100, 0, 41};
  const std::vector<i128> s1 = {1, 2, -3, 4, 5};
  CHECK(reject_t_stat(z1, s1) == -267);
  CHECK(reject_threshold_q96(-267, sigma, lnm) ==
        fx::exp_neg_q96(parse_u128("24553056428902933061109503477")));

  const std::vector<i128> z2 = {5, 9, -2, 60, -1};
  const std::vector<i128> s2 = {2, 1, 0, 7, -4};
  CHECK(reject_t_stat(z2, s2) == 816);
  CHECK(reject_threshold_q96(816, sigma, lnm) ==
        fx::exp_neg_q96(parse_u128("24994988831494486070735783297")));

  const std::vector<i128> z3 = {17, -4, 2, 900, -55};
  const std::vector<i128> s3 = {0, 0, 0, 0, 0};
  CHECK(reject_t_stat(z3, s3) == 0);
  CHECK(reject_threshold_q96(0, sigma, lnm) == fx::exp_neg_q96(lnm));

  // Saturated positive exponent: certain rejection.
  const std::vector<i128> z4 = {i128(1) << 55, i128(1) << 54};
  const std::vector<i128> s4 = {i128(1) << 40, i128(1) << 40};
  const i128 t4 = reject_t_stat(z4, s4);
  CHECK(t4 == (i128(3) << 95) - (i128(1) << 81));
  CHECK(reject_threshold_q96(t4, sigma, lnm) == 0);

  // Deeply negative: the shifted density dominates, certain acceptance.
  const std::vector<i128> z5 = {-(i128(1) << 55), i128(1) << 54};
  const std::vector<i128> s5 = {i128(1) << 40, -(i128(1) << 40)};
  CHECK(reject_threshold_q96(reject_t_stat(z5, s5), sigma, lnm) == kOneQ96);

  // Empty-shift degenerate input.
  const std::vector<i128> z6 = {0, 0, 0};
  CHECK(reject_t_stat(z6, {0, 0, 0}) == 0);
}

TEST_CASE("filter decisions under a pinned stream match the reference run") {
  const ParamSet ps = toy();
  const std::vector<i128> z = {3, -7, 100, 0, 41};
  const std::vector<i128> s = {1, 2, -3, 4, 5};
  const std::string want = "111110010111111101111110";
  ChaChaRng rng = ChaChaRng(20260822).fork(5);
  std::string got;
  for (int i = 0; i < 24; ++i)
    got += reject_filter(rng, z, s, ps.sigma_key(), ps.lnm_key_q96) ? '1' : '0';
  CHECK(got == want);
}

TEST_CASE("release coin rate matches exp(-lnM) at both tiers") {
  const ParamSet ps = toy();
  ChaChaRng rng = ChaChaRng(91).fork(1);
  const int n = 20000;

  int acc = 0;
  for (int i = 0; i < n; ++i) acc += release_coin(rng, ps.lnm_key_q96);
  const double p = 0.73250997561;  // exp(-lnM) for the small tier, key width
  const double se = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(double(acc) / n - p) < 3.29 * se);

  const ParamSet desk = derive_params({8, 3, 16, 16});
  acc = 0;
  for (int i = 0; i < n; ++i) acc += release_coin(rng, desk.lnm_key_q96);
  const double pd = std::exp(-q96_to_double(desk.lnm_key_q96));
  CHECK(pd == doctest::Approx(0.8123).epsilon(0.001));
  CHECK(std::abs(double(acc) / n - pd) < 3.29 * std::sqrt(pd * (1 - pd) / n));
}

TEST_CASE("honest shifted samples are released at rate 1/M with no mean leak") {
  const ParamSet ps = toy();
  const u128 sigma = ps.sigma_key();
  DiscreteGaussian width(sigma << 32);
  ChaChaRng rng(4242);

  // A shift of honest size: norm^2 equal to the key-witness budget
  // (v+u) * alpha_q^2 = 760 at this tier, spread over 190 coordinates.
  const u32 dim = ps.u + ps.v;
  std::vector<i128> shift(dim, 2);
  i128 shift_n2 = 0;
  for (i128 x : shift) shift_n2 += x * x;
  CHECK(shift_n2 == i128(ps.keygen_s2() + ps.keygen_e2()));

  const int n = 20000;
  int acc = 0;
  double mean_along = 0;  // <z, shift>/||shift|| over released samples
  for (int i = 0; i < n; ++i) {
    std::vector<i128> z = width.sample_vec(rng, dim);
    for (u32 j = 0; j < dim; ++j) z[j] += shift[j];
    if (!reject_filter(rng, z, shift, sigma, ps.lnm_key_q96)) continue;
    ++acc;
    i128 dot = 0;
    for (u32 j = 0; j < dim; ++j) dot += z[j] * shift[j];
    mean_along += double(i64(dot)) / std::sqrt(double(i64(shift_n2)));
  }

  const double p = 0.73250997561;
  CHECK(std::abs(double(acc) / n - p) < 3.29 * std::sqrt(p * (1 - p) / n));

  // Released vectors must be centered: without the filter the projection
  // onto the shift direction would sit at ||shift|| ~ 27.6, more than ten
  // standard errors away from zero at this sample size.
  mean_along /= acc;
  const double coord_sd = double(u64(sigma)) / std::sqrt(2 * 3.14159265358979);
  const double se = coord_sd / std::sqrt(double(acc));
  CHECK(std::abs(mean_along) < 3.29 * se);
}

TEST_CASE("guards reject malformed statistics input") {
  CHECK_THROWS_AS(reject_t_stat({1, 2}, {1}), LogicError);
  CHECK_THROWS_AS(reject_t_stat({i128(1) << 60}, {1}), LogicError);
  CHECK_THROWS_AS(reject_t_stat({1}, {-(i128(1) << 60)}), LogicError);
  CHECK_THROWS_AS(reject_threshold_q96(5, 0, 1), LogicError);
  CHECK_THROWS_AS(reject_threshold_q96(5, 10, u128(1) << 111), LogicError);
}
