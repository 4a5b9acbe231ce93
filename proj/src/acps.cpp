#include "lpvss/acps.hpp"

namespace lpvss {

namespace {

std::vector<u128> to_residues(const Modulus& m, const std::vector<i128>& v) {
  std::vector<u128> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = from_centered(v[i], m.q);
  return out;
}

void check_shape(const PkeContext& ctx, const Mat& a) {
  if (a.rows != ctx.ps.v || a.cols != ctx.ps.u) {
    throw ConfigError("pke: matrix shape does not match params");
  }
}

}  // namespace

PkeContext::PkeContext(const ParamSet& params)
    : ps(params),
      mq(params.q),
      w_key(u128(params.alpha_q) << 32),
      w_r(u128(params.r_w) << 32),
      w_e(u128(params.beta_q_x2) << 31) {
  if (ps.u == 0 || ps.v == 0 || ps.p < 3 || ps.q != ps.p * ps.p) {
    throw ConfigError("pke: degenerate params");
  }
}

Mat pke_uniform_matrix(const PkeContext& ctx, ChaChaRng& rng) {
  Mat a(ctx.ps.v, ctx.ps.u);
  for (auto& x : a.a) x = rng.below_u128(ctx.mq.q);
  return a;
}

KeyPair pke_keygen(const PkeContext& ctx, const Mat& a, ChaChaRng& rng) {
  check_shape(ctx, a);
  KeyPair kp;
  // Strict interior of the honest radii: squared norm <= gate - 1.
  kp.s = ctx.w_key.sample_vec_bounded(rng, ctx.ps.v, ctx.ps.keygen_s2() - 1);
  kp.e = ctx.w_key.sample_vec_bounded(rng, ctx.ps.u, ctx.ps.keygen_e2() - 1);
  kp.b = vec_mat(ctx.mq, to_residues(ctx.mq, kp.s), a);
  for (std::size_t j = 0; j < kp.b.size(); ++j) {
    kp.b[j] = ctx.mq.add(kp.b[j], from_centered(kp.e[j], ctx.mq.q));
  }
  return kp;
}

bool pke_keyver(const PkeContext& ctx, const Mat& a,
                const std::vector<u128>& b, const std::vector<i128>& s) {
  check_shape(ctx, a);
  if (b.size() != ctx.ps.u || s.size() != ctx.ps.v) return false;
  auto sn = norm2_checked(s);
  if (!sn || *sn > ctx.ps.b_key_star2) return false;
  std::vector<u128> sa = vec_mat(ctx.mq, to_residues(ctx.mq, s), a);
  std::vector<i128> d(ctx.ps.u);
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = center_lift(ctx.mq.sub(ctx.mq.reduce(b[j]), sa[j]), ctx.mq.q);
  }
  auto dn = norm2_checked(d);
  return dn && *dn <= ctx.ps.b_key_star2;
}

std::pair<Ciphertext, EncWitness> pke_enc(const PkeContext& ctx, const Mat& a,
                                          const std::vector<u128>& b, u128 m,
                                          ChaChaRng& rng) {
  check_shape(ctx, a);
  if (b.size() != ctx.ps.u) throw ConfigError("pke_enc: public key length");
  if (m >= ctx.ps.p) throw ConfigError("pke_enc: message out of range");

  EncWitness w;
  w.r = ctx.w_r.sample_vec_bounded(rng, ctx.ps.u, ctx.ps.enc_r2());
  // 4 e^2 <= enc_e2_x4 is equivalent to e^2 <= enc_e2_x4 / 4 (floor).
  w.e = ctx.w_e.sample_vec_bounded(rng, 1, ctx.ps.enc_e2_x4() >> 2)[0];

  std::vector<u128> r_res = to_residues(ctx.mq, w.r);
  Ciphertext ct;
  ct.c1 = mat_vec(ctx.mq, a, r_res);
  ct.c2 = ctx.mq.add(dot(ctx.mq, b, r_res),
                     ctx.mq.add(from_centered(w.e, ctx.mq.q), ctx.ps.p * m));
  return {std::move(ct), std::move(w)};
}

DecResult pke_dec(const PkeContext& ctx, const Ciphertext& ct,
                  const std::vector<i128>& s) {
  const Modulus& mq = ctx.mq;
  if (ct.c1.size() != ctx.ps.v || s.size() != ctx.ps.v) {
    throw ConfigError("pke_dec: dimension mismatch");
  }
  std::vector<u128> c1(ct.c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) c1[i] = mq.reduce(ct.c1[i]);
  u128 x = mq.sub(mq.reduce(ct.c2), dot(mq, to_residues(mq, s), c1));
  DecResult out;
  out.f = center_lift(x % ctx.ps.p, ctx.ps.p);
  i128 lifted = i128(x) - out.f;  // divisible by p, in [0, q]
  require(lifted >= 0 && lifted % i128(ctx.ps.p) == 0, "pke_dec: split failed");
  out.m = u128(lifted / i128(ctx.ps.p)) % ctx.ps.p;
  require(mq.add(mq.reduce(ctx.ps.p * out.m), from_centered(out.f, mq.q)) == x,
          "pke_dec: witness identity failed");
  return out;
}

}  // namespace lpvss
