#include "lpvss/gadget.hpp"

#include "lpvss/sampler.hpp"
#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

u64 ceil_sqrt(u128 x) {
  u128 r = wide::isqrt(x);
  return u64(r * r == x ? r : r + 1);
}

}  // namespace

Gadget gadget_keygen(u128 q, u32 v, u32 u0, ChaChaRng& rng) {
  if (q < 3 || (q & 1) == 0) throw ConfigError("gadget: q must be odd >= 3");
  if (q >= (u128(1) << 125)) throw ConfigError("gadget: q too large");
  if (v == 0 || u0 == 0) throw ConfigError("gadget: v and u0 must be positive");

  Gadget g;
  g.mod = Modulus(q);
  g.v = v;
  g.u0 = u0;
  g.k = bitlen_u128(q - 1);
  g.u = u0 + v * g.k;
  const u32 vk = v * g.k;

  // Uniform left block, row-major.
  Mat abar(v, u0);
  for (u32 i = 0; i < v; ++i) {
    for (u32 j = 0; j < u0; ++j) abar.at(i, j) = rng.below_u128(q);
  }

  // Small secret matrix, row-major, width 5.
  DiscreteGaussian gauss(u128(5) << 32);
  g.r_signed.resize(std::size_t(u0) * vk);
  for (auto& x : g.r_signed) x = i64(gauss.sample(rng));

  g.r_cols = Mat(vk, u0);
  for (u32 i = 0; i < u0; ++i) {
    for (u32 j = 0; j < vk; ++j) {
      g.r_cols.at(j, i) = from_centered(g.r_at(i, j), q);
    }
  }

  // A = [Abar | G - Abar R].
  g.a = Mat(v, g.u);
  for (u32 i = 0; i < v; ++i) {
    for (u32 j = 0; j < u0; ++j) g.a.at(i, j) = abar.at(i, j);
  }
  for (u32 i = 0; i < v; ++i) {
    // Row i of Abar R: dot row i of Abar with each column of R.
    std::vector<u128> abar_row(u0);
    for (u32 j = 0; j < u0; ++j) abar_row[j] = abar.at(i, j);
    std::vector<u128> prod = mat_vec(g.mod, g.r_cols, abar_row);
    for (u32 j = 0; j < vk; ++j) {
      u32 blk = j / g.k, pos = j % g.k;
      u128 gij = blk == i ? g.mod.pow(2, pos) : 0;
      g.a.at(i, u0 + j) = g.mod.sub(gij, prod[j]);
    }
  }
  g.a_t = Mat(g.u, v);
  for (u32 i = 0; i < v; ++i) {
    for (u32 j = 0; j < g.u; ++j) g.a_t.at(j, i) = g.a.at(i, j);
  }

  // Guarantee radii.
  g.block_radius = q / (2 * u128(ceil_sqrt(g.k)));
  g.coupling2 = 0;
  for (u32 blk = 0; blk < v; ++blk) {
    u128 acc = 0;
    for (u32 pos = 0; pos < g.k; ++pos) {
      u32 j = blk * g.k + pos;
      u128 col2 = 1;
      for (u32 i = 0; i < u0; ++i) {
        i64 x = g.r_at(i, j);
        col2 += u128(u64(x < 0 ? -x : x)) * u128(u64(x < 0 ? -x : x));
      }
      acc += col2;
    }
    if (acc > g.coupling2) g.coupling2 = acc;
  }
  g.noise_radius = g.block_radius / ceil_sqrt(g.coupling2);
  return g;
}

std::optional<BlockDecode> gblock_decode(const Modulus& mod, u32 k,
                                         const u128* c) {
  const u128 q = mod.q;
  // d_j = centered(2 c_j - c_{j+1}), w = centered(<bits(q), c>).
  std::vector<i128> d(k - 1);
  for (u32 j = 0; j + 1 < k; ++j) {
    d[j] = center_lift(mod.sub(mod.add(c[j], c[j]), c[j + 1]), q);
  }
  u128 wacc = 0;
  for (u32 j = 0; j < k; ++j) {
    if ((q >> j) & 1) wacc = mod.add(wacc, c[j]);
  }
  i128 w = center_lift(wacc, q);

  // big = w + sum_{i >= 1} d_{i-1} * floor(q / 2^i), tracked as a sign and a
  // 256-bit magnitude via separate positive/negative accumulators.
  wide::u256 pos{}, neg{};
  auto add_signed = [&](i128 val, u128 scale) {
    u128 mag = val < 0 ? u128(0) - u128(val) : u128(val);
    wide::u256 term = wide::mul128(mag, scale);
    if (val < 0) {
      neg = wide::add(neg, term);
    } else {
      pos = wide::add(pos, term);
    }
  };
  add_signed(w, 1);
  for (u32 i = 1; i < k; ++i) add_signed(d[i - 1], q >> i);

  bool negative = wide::cmp(pos, neg) < 0;
  wide::u256 mag = negative ? wide::sub(neg, pos) : wide::sub(pos, neg);
  wide::DivResult dr = wide::divmod(mag, q);
  if (dr.rem != 0) return std::nullopt;
  if (dr.quot.w[2] != 0 || dr.quot.w[3] != 0) return std::nullopt;
  u128 qmag = wide::lo128(dr.quot);
  if (qmag >= q) return std::nullopt;

  BlockDecode out;
  out.e.resize(k);
  out.e[0] = negative ? -i128(qmag) : i128(qmag);
  for (u32 j = 0; j + 1 < k; ++j) {
    i128 nxt = 2 * out.e[j] - d[j];
    if (nxt >= i128(q) || -nxt >= i128(q)) return std::nullopt;
    out.e[j + 1] = nxt;
  }
  out.s = mod.sub(c[0], from_centered(out.e[0], q));
  return out;
}

bool norm_within(const std::vector<i128>& e, u128 bound) {
  wide::u256 acc{};
  for (i128 x : e) {
    u128 mag = x < 0 ? u128(0) - u128(x) : u128(x);
    acc = wide::add(acc, wide::mul128(mag, mag));
  }
  return wide::cmp(acc, wide::mul128(bound, bound)) <= 0;
}

std::optional<GadgetInverse> gadget_invert(const Gadget& g,
                                           const std::vector<u128>& b) {
  if (b.size() != g.u) throw ConfigError("gadget_invert: length mismatch");
  const Modulus& m = g.mod;

  // c = b1 + R^T bbar.
  std::vector<u128> bbar(b.begin(), b.begin() + g.u0);
  std::vector<u128> c = mat_vec(m, g.r_cols, bbar);
  for (u32 j = 0; j < g.v * g.k; ++j) c[j] = m.add(c[j], b[g.u0 + j]);

  GadgetInverse out;
  out.s.resize(g.v);
  for (u32 blk = 0; blk < g.v; ++blk) {
    auto dec = gblock_decode(m, g.k, &c[std::size_t(blk) * g.k]);
    if (!dec) return std::nullopt;
    out.s[blk] = dec->s;
  }

  // e = centered(b - s^T A), then the genuine-solution gate.
  std::vector<u128> sa = mat_vec(m, g.a_t, out.s);
  out.e.resize(g.u);
  for (u32 j = 0; j < g.u; ++j) {
    out.e[j] = center_lift(m.sub(b[j], sa[j]), m.q);
  }
  if (!norm_within(out.e, g.noise_radius)) return std::nullopt;
  return out;
}

}  // namespace lpvss
