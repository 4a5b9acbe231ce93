#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpvss/modmath.hpp"
#include "lpvss/sampler.hpp"

using namespace lpvss;

namespace {

// Frozen reference tables from tools/oracles/cdt_ref.py (bit-exact integer
// mirror of the build recurrence, each weight independently checked against
// an 80-digit mpmath evaluation of e^{-pi x^2 / sigma^2} * 2^w_scale).
constexpr const char* kSigma4Cum[17] = {
    "1329227995784915872903807060280344576",
    "2421487814838730545236733252519512104",
    "3027533538611052625756218546494405500",
    "3254592047060919479783834609673691097",
    "3312033197024686638863725666617168082",
    "3321845284849933225808838057063633119",
    "3322977040531874556170559033205004397",
    "3323065185372333627209994385995110861",
    "3323069820845424386739242520674232981",
    "3323069985450866039591719221596116541",
    "3323069989397685566105916734331257865",
    "3323069989461585925939334447307705866",
    "3323069989462284499742072486053164586",
    "3323069989462289656470283611732167068",
    "3323069989462289682173598995120354480",
    "3323069989462289682260107140970010539",
    "3323069989462289682260303738391837678",
};
constexpr const char* kSigma4Total = "5316911983139663491616800416503330780";

constexpr const char* kSigma125Cum[6] = {
    "1329227995784915872903807060280344576",
    "1507219229465256200664179745418563550",
    "1507646591574206312493546843883625551",
    "1507646609973098795768029988521956528",
    "1507646609973112998948858906682589866",
    "1507646609973112998949055504104417005",
};
constexpr const char* kSigma125Total =
    "1686065224161310124994303947928489434";

constexpr const char* kSigma1000p5Cum1 = "20769154842626833463401465723730342";
constexpr const char* kSigma1000p5Cum1000 =
    "5136765482424131778190190546583275602";
constexpr const char* kSigma1000p5CumLast =
    "5200085303822629869973232286584997195";
constexpr const char* kSigma1000p5Total =
    "10389786013928190084689403580511554198";

double to_double(i128 v) { return double(v); }

struct Moments {
  double mean;
  double var;
};

Moments measure(const DiscreteGaussian& g, ChaChaRng& rng, std::size_t n) {
  double s1 = 0, s2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = to_double(g.sample(rng));
    s1 += x;
    s2 += x * x;
  }
  double mean = s1 / double(n);
  return {mean, s2 / double(n) - mean * mean};
}

// Width sigma in this codebase means rho(x) = e^{-pi x^2 / sigma^2}, so the
// per-coordinate standard deviation is sigma / sqrt(2 pi).
double std_of_width(double sigma) { return sigma / std::sqrt(2.0 * M_PI); }

double ks_stat(std::vector<i128> a, std::vector<i128> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < a.size() && j < b.size()) {
    i128 v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    double fa = double(i) / double(a.size());
    double fb = double(j) / double(b.size());
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

TEST_CASE("cumulative table matches the reference at sigma = 4") {
  DiscreteGaussian g(u128(4) << 32);
  CHECK(g.radius() == 16);
  CHECK(g.table_engine());
  REQUIRE(g.table_cum().size() == 17);
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(g.table_cum()[i] == parse_u128(kSigma4Cum[i]));
  }
  CHECK(g.table_total() == parse_u128(kSigma4Total));
}

TEST_CASE("cumulative table matches the reference at sigma = 1.25") {
  // Smallest-radius regime: the weight scale is capped at the 120 fractional
  // bits the recurrence carries.
  DiscreteGaussian g(u128(5) << 30);
  CHECK(g.radius() == 5);
  REQUIRE(g.table_cum().size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(g.table_cum()[i] == parse_u128(kSigma125Cum[i]));
  }
  CHECK(g.table_total() == parse_u128(kSigma125Total));
}

TEST_CASE("cumulative table matches the reference at sigma = 1000.5") {
  DiscreteGaussian g((u128(1000) << 32) + (u128(1) << 31));
  CHECK(g.radius() == 4002);
  REQUIRE(g.table_cum().size() == 4003);
  CHECK(g.table_cum()[1] == parse_u128(kSigma1000p5Cum1));
  CHECK(g.table_cum()[1000] == parse_u128(kSigma1000p5Cum1000));
  CHECK(g.table_cum()[4002] == parse_u128(kSigma1000p5CumLast));
  CHECK(g.table_total() == parse_u128(kSigma1000p5Total));
}

TEST_CASE("zero-magnitude frequency matches the table probabilities") {
  DiscreteGaussian g(u128(4) << 32);
  double p0 = double(g.table_cum()[0]) / double(g.table_total());
  ChaChaRng rng(2024);
  const std::size_t n = 200000;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.sample(rng) == 0) ++zeros;
  }
  double phat = double(zeros) / double(n);
  double se = std::sqrt(p0 * (1 - p0) / double(n));
  CHECK(std::abs(phat - p0) < 4 * se);
}

TEST_CASE("moments at sigma = 25, both engines") {
  const double sigma = 25.0;
  const double sd = std_of_width(sigma);
  const double var = sd * sd;
  const std::size_t n = 40000;
  for (auto engine : {DiscreteGaussian::Engine::kAuto,
                      DiscreteGaussian::Engine::kForceRejection}) {
    DiscreteGaussian g(u128(25) << 32, engine);
    ChaChaRng rng(engine == DiscreteGaussian::Engine::kAuto ? 31 : 32);
    Moments m = measure(g, rng, n);
    CHECK(std::abs(m.mean) < 4 * sd / std::sqrt(double(n)));
    CHECK(std::abs(m.var / var - 1.0) < 4 * std::sqrt(2.0 / double(n)));
  }
}

TEST_CASE("moments at sigma = 2^21 (rejection engine via auto)") {
  DiscreteGaussian g(u128(1) << 53);
  CHECK(!g.table_engine());
  const double sd = std_of_width(std::ldexp(1.0, 21));
  const std::size_t n = 40000;
  ChaChaRng rng(33);
  Moments m = measure(g, rng, n);
  CHECK(std::abs(m.mean) < 4 * sd / std::sqrt(double(n)));
  CHECK(std::abs(m.var / (sd * sd) - 1.0) < 4 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("table and rejection engines agree at sigma = 2^20") {
  // Two-sample Kolmogorov-Smirnov at the table/rejection crossover width.
  // Critical value 1.9495 * sqrt((n + m) / (n m)) at alpha = 0.001 with
  // n = m = 10^4 is 0.02757 (Smirnov asymptotic).
  DiscreteGaussian table(u128(1) << 52, DiscreteGaussian::Engine::kAuto);
  CHECK(table.table_engine());
  DiscreteGaussian rej(u128(1) << 52,
                       DiscreteGaussian::Engine::kForceRejection);
  CHECK(!rej.table_engine());
  ChaChaRng r1(101), r2(102);
  const std::size_t n = 10000;
  std::vector<i128> a = table.sample_vec(r1, n);
  std::vector<i128> b = rej.sample_vec(r2, n);
  CHECK(ks_stat(std::move(a), std::move(b)) < 0.0276);
}

TEST_CASE("dim-64 vectors concentrate well inside the width ball") {
  const u64 sigma = 300;
  DiscreteGaussian g(u128(sigma) << 32);
  ChaChaRng rng(64);
  const std::size_t trials = 2000;
  const u128 threshold = u128(64) * sigma * sigma;  // (sigma sqrt(64))^2
  std::size_t outside = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    std::vector<i128> v = g.sample_vec(rng, 64);
    auto n2 = norm2_checked(v.data(), v.size());
    REQUIRE(n2.has_value());
    if (*n2 > threshold) ++outside;
  }
  CHECK(double(outside) / double(trials) < 0.01);
}

TEST_CASE("same seed reproduces the same stream") {
  u128 s = (u128(1000) << 32) + (u128(1) << 31);
  for (auto engine : {DiscreteGaussian::Engine::kAuto,
                      DiscreteGaussian::Engine::kForceRejection}) {
    DiscreteGaussian g(s, engine);
    ChaChaRng r1(777), r2(777);
    for (int i = 0; i < 100; ++i) {
      CHECK(g.sample(r1) == g.sample(r2));
    }
  }
}

TEST_CASE("samples stay within the stored radius") {
  DiscreteGaussian small(u128(1) << 32);  // sigma = 1, radius 4
  ChaChaRng rng(5);
  for (int i = 0; i < 4000; ++i) {
    i128 x = small.sample(rng);
    CHECK(x <= i128(small.radius()));
    CHECK(-x <= i128(small.radius()));
  }
  DiscreteGaussian rej((u128(1000) << 32) + (u128(1) << 31),
                       DiscreteGaussian::Engine::kForceRejection);
  for (int i = 0; i < 4000; ++i) {
    i128 x = rej.sample(rng);
    CHECK(x <= i128(rej.radius()));
    CHECK(-x <= i128(rej.radius()));
  }
}

TEST_CASE("bounded vector sampling enforces its bound") {
  DiscreteGaussian g(u128(25) << 32);
  ChaChaRng rng(9);
  // Comfortably above the mean squared norm (~8 * 99.5), so retries are rare.
  const u128 bound = 2000;
  for (int i = 0; i < 50; ++i) {
    std::vector<i128> v = g.sample_vec_bounded(rng, 8, bound);
    auto n2 = norm2_checked(v.data(), v.size());
    REQUIRE(n2.has_value());
    CHECK(*n2 <= bound);
  }
  // A bound of zero demands the all-zero vector; at sigma = 25 that has
  // probability ~25^-8 per try, so 128 tries exhaust.
  CHECK_THROWS_AS(g.sample_vec_bounded(rng, 8, 0), SamplingError);
}

TEST_CASE("construction rejects out-of-range widths") {
  CHECK_THROWS_AS(DiscreteGaussian((u128(1) << 32) - 1), ConfigError);
  CHECK_THROWS_AS(DiscreteGaussian((u128(1) << 88) + 1), ConfigError);
  CHECK_THROWS_AS(DiscreteGaussian((u128(1) << 52) + 1,
                                   DiscreteGaussian::Engine::kForceTable),
                  ConfigError);
  DiscreteGaussian ok(u128(1) << 32);  // sigma = 1 accepted
  CHECK(ok.radius() == 4);
}
