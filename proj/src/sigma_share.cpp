#include "lpvss/sigma.hpp"

#include "sigma_internal.hpp"

namespace lpvss {

using sigma_detail::add_scaled;
using sigma_detail::append;
using sigma_detail::center_vec;
using sigma_detail::reduce_vec;
using sigma_detail::to_res;

namespace {

void check_statement(const SigmaContext& sc, const Mat& a,
                     const ShareStatement& stmt) {
  require(a.rows == sc.ps.v && a.cols == sc.ps.u,
          "share argument: matrix shape mismatch");
  require(stmt.pk.size() == sc.ps.n && stmt.ct.size() == sc.ps.n,
          "share argument: statement party count mismatch");
  for (u32 i = 0; i < sc.ps.n; ++i) {
    require(stmt.pk[i].size() == sc.ps.u,
            "share argument: public row shape mismatch");
    require(stmt.ct[i].c1.size() == sc.ps.v,
            "share argument: ciphertext shape mismatch");
  }
}

// The key-soundness decode of one posted row: the unique short (s, e) with
// b = s^T A + e and both parts within the relaxed key bound.  The share
// argument's trapdoor operations are only defined over such rows; the
// composed system establishes this by verifying key arguments first.
struct KeyParts {
  std::vector<u128> s_res;
  std::vector<i128> e;
};
KeyParts sound_key_parts(const SigmaContext& sc, const Gadget& g,
                         const std::vector<u128>& b) {
  const auto inv = gadget_invert(g, reduce_vec(sc.mq, b));
  if (!inv.has_value())
    throw PreconditionError(
        "share argument: posted key outside the sound key language");
  const std::vector<i128> s_c = center_vec(sc.mq, inv->s);
  if (!norm2_le(s_c, sc.ps.b_key_star2) || !norm2_le(inv->e, sc.ps.b_key_star2))
    throw PreconditionError(
        "share argument: posted key outside the sound key language");
  return {inv->s, inv->e};
}

// c2 - s^T c1 decomposed as p*t + f with centered f.
struct DecSplit {
  u128 t;
  i128 f;
};
DecSplit decrypt_split(const SigmaContext& sc, const std::vector<u128>& s_res,
                       const std::vector<u128>& c1_res, u128 c2_res) {
  const u128 x = sc.mq.sub(c2_res, dot(sc.mq, s_res, c1_res));
  const i128 f = center_lift(x % sc.ps.p, sc.ps.p);
  const i128 lifted = i128(x) - f;
  require(lifted >= 0 && lifted % i128(sc.ps.p) == 0,
          "decrypt split: lift invariant");
  return {u128(lifted / i128(sc.ps.p)) % sc.ps.p, f};
}

}  // namespace

ShareState share_commit(const SigmaContext& sc, const Mat& a,
                        const ShareStatement& stmt, ChaChaRng& rng) {
  check_statement(sc, a, stmt);
  const u32 n = sc.ps.n;
  ShareState st;
  st.v.resize(n);
  st.k.resize(n);
  st.first.a1.resize(n);
  st.first.a2.resize(n);
  for (u32 i = 0; i < n; ++i) {
    st.v[i] = sc.w_enc.sample_vec(rng, sc.ps.u);
    st.k[i] = sc.w_enc.sample(rng);
  }
  st.mask = random_codeword(sc.mp, n, sc.ps.t, rng);
  for (u32 i = 0; i < n; ++i) {
    const std::vector<u128> v_res = to_res(sc.mq, st.v[i]);
    st.first.a1[i] = mat_vec(sc.mq, a, v_res);
    u128 a2 = dot(sc.mq, reduce_vec(sc.mq, stmt.pk[i]), v_res);
    a2 = sc.mq.add(a2, from_centered(st.k[i], sc.ps.q));
    st.first.a2[i] = sc.mq.add(a2, sc.ps.p * st.mask[i]);
  }
  return st;
}

ShareResponse share_respond_raw(const SigmaContext& sc, const ShareState& st,
                                const ShareWitness& wit, unsigned c) {
  require(c <= 1, "share respond: challenge must be a bit");
  const u32 n = sc.ps.n;
  require(st.v.size() == n && st.k.size() == n && st.mask.size() == n,
          "share respond: state shape mismatch");
  require(wit.enc.size() == n && wit.m.size() == n,
          "share respond: witness shape mismatch");
  ShareResponse resp;
  resp.z.resize(n);
  resp.h.resize(n);
  resp.t.resize(n);
  for (u32 i = 0; i < n; ++i) {
    require(wit.enc[i].r.size() == sc.ps.u && wit.m[i] < sc.ps.p,
            "share respond: witness shape mismatch");
    resp.z[i] = add_scaled(st.v[i], wit.enc[i].r, c);
    resp.h[i] = st.k[i] + (c ? wit.enc[i].e : i128(0));
    resp.t[i] = sc.mp.add(st.mask[i], c ? wit.m[i] : u128(0));
  }
  return resp;
}

std::vector<i128> share_shift(const ShareWitness& wit, unsigned c) {
  require(c <= 1, "share shift: challenge must be a bit");
  std::vector<i128> out;
  for (const EncWitness& w : wit.enc) {
    if (c) {
      append(out, w.r);
      out.push_back(w.e);
    } else {
      out.insert(out.end(), w.r.size() + 1, 0);
    }
  }
  return out;
}

std::vector<i128> share_gauss(const ShareResponse& resp) {
  require(resp.z.size() == resp.h.size(), "share gauss: shape mismatch");
  std::vector<i128> out;
  for (std::size_t i = 0; i < resp.z.size(); ++i) {
    append(out, resp.z[i]);
    out.push_back(resp.h[i]);
  }
  return out;
}

std::optional<ShareResponse> share_respond(const SigmaContext& sc,
                                           const ShareState& st,
                                           const ShareWitness& wit, unsigned c,
                                           ChaChaRng& rng) {
  ShareResponse resp = share_respond_raw(sc, st, wit, c);
  if (!reject_filter(rng, share_gauss(resp), share_shift(wit, c),
                     sc.ps.sigma_enc(), sc.ps.lnm_enc_q96))
    return std::nullopt;
  return resp;
}

bool share_verify(const SigmaContext& sc, const Mat& a,
                  const ShareStatement& stmt, const ShareRep& rep) {
  const u32 n = sc.ps.n;
  if (a.rows != sc.ps.v || a.cols != sc.ps.u) return false;
  if (rep.c > 1) return false;
  if (stmt.pk.size() != n || stmt.ct.size() != n) return false;
  if (rep.first.a1.size() != n || rep.first.a2.size() != n) return false;
  if (rep.resp.z.size() != n || rep.resp.h.size() != n ||
      rep.resp.t.size() != n)
    return false;
  for (u32 i = 0; i < n; ++i) {
    if (stmt.pk[i].size() != sc.ps.u || stmt.ct[i].c1.size() != sc.ps.v)
      return false;
    if (rep.first.a1[i].size() != sc.ps.v || rep.resp.z[i].size() != sc.ps.u)
      return false;
    if (rep.resp.t[i] >= sc.ps.p) return false;
    std::vector<i128> zh = rep.resp.z[i];
    zh.push_back(rep.resp.h[i]);
    if (!norm2_le(zh, sc.ps.enc_sig_norm2())) return false;

    const std::vector<u128> z_res = to_res(sc.mq, rep.resp.z[i]);
    const std::vector<u128> az = mat_vec(sc.mq, a, z_res);
    for (u32 j = 0; j < sc.ps.v; ++j) {
      u128 rhs = sc.mq.reduce(rep.first.a1[i][j]);
      if (rep.c) rhs = sc.mq.add(rhs, sc.mq.reduce(stmt.ct[i].c1[j]));
      if (az[j] != rhs) return false;
    }
    u128 lhs = dot(sc.mq, reduce_vec(sc.mq, stmt.pk[i]), z_res);
    lhs = sc.mq.add(lhs, from_centered(rep.resp.h[i], sc.ps.q));
    lhs = sc.mq.add(lhs, sc.ps.p * rep.resp.t[i]);
    u128 rhs = sc.mq.reduce(rep.first.a2[i]);
    if (rep.c) rhs = sc.mq.add(rhs, sc.mq.reduce(stmt.ct[i].c2));
    if (lhs != rhs) return false;
  }
  return in_code(sc.mp, sc.parity, rep.resp.t);
}

ShareRep share_simulate(const SigmaContext& sc, const Mat& a,
                        const ShareStatement& stmt, unsigned c,
                        ChaChaRng& rng) {
  check_statement(sc, a, stmt);
  require(c <= 1, "share simulate: challenge must be a bit");
  const u32 n = sc.ps.n;
  for (int tries = 0; tries < 1024; ++tries) {
    ShareResponse resp;
    resp.z.resize(n);
    resp.h.resize(n);
    for (u32 i = 0; i < n; ++i) {
      resp.z[i] = sc.w_enc.sample_vec(rng, sc.ps.u);
      resp.h[i] = sc.w_enc.sample(rng);
    }
    resp.t = random_codeword(sc.mp, n, sc.ps.t, rng);
    if (!release_coin(rng, sc.ps.lnm_enc_q96)) continue;
    ShareRep rep;
    rep.c = c;
    rep.resp = std::move(resp);
    rep.first.a1.resize(n);
    rep.first.a2.resize(n);
    for (u32 i = 0; i < n; ++i) {
      const std::vector<u128> z_res = to_res(sc.mq, rep.resp.z[i]);
      rep.first.a1[i] = mat_vec(sc.mq, a, z_res);
      if (c)
        for (u32 j = 0; j < sc.ps.v; ++j)
          rep.first.a1[i][j] =
              sc.mq.sub(rep.first.a1[i][j], sc.mq.reduce(stmt.ct[i].c1[j]));
      u128 a2 = dot(sc.mq, reduce_vec(sc.mq, stmt.pk[i]), z_res);
      a2 = sc.mq.add(a2, from_centered(rep.resp.h[i], sc.ps.q));
      a2 = sc.mq.add(a2, sc.ps.p * rep.resp.t[i]);
      if (c) a2 = sc.mq.sub(a2, sc.mq.reduce(stmt.ct[i].c2));
      rep.first.a2[i] = a2;
    }
    return rep;
  }
  throw SamplingError("share simulate: release coin exhausted");
}

std::optional<unsigned> share_bad_challenge(const SigmaContext& sc,
                                            const Gadget& g,
                                            const ShareStatement& stmt,
                                            const ShareFirst& first) {
  require(g.v == sc.ps.v && g.u == sc.ps.u && g.mod.q == sc.ps.q,
          "share bad-challenge: trapdoor does not match parameters");
  const u32 n = sc.ps.n;
  require(stmt.pk.size() == n && stmt.ct.size() == n,
          "share bad-challenge: statement shape mismatch");
  require(first.a1.size() == n && first.a2.size() == n,
          "share bad-challenge: first message shape mismatch");
  std::vector<std::vector<u128>> keys(n);
  for (u32 i = 0; i < n; ++i)
    keys[i] = sound_key_parts(sc, g, stmt.pk[i]).s_res;

  for (unsigned c = 0; c <= 1; ++c) {
    bool violated = false;
    std::vector<u128> t_c(n);
    for (u32 i = 0; i < n && !violated; ++i) {
      std::vector<u128> a1c(sc.ps.v);
      for (u32 j = 0; j < sc.ps.v; ++j) {
        a1c[j] = sc.mq.reduce(first.a1[i][j]);
        if (c) a1c[j] = sc.mq.add(a1c[j], sc.mq.reduce(stmt.ct[i].c1[j]));
      }
      u128 a2c = sc.mq.reduce(first.a2[i]);
      if (c) a2c = sc.mq.add(a2c, sc.mq.reduce(stmt.ct[i].c2));
      const DecSplit split = decrypt_split(sc, keys[i], a1c, a2c);
      const u128 f_abs = split.f < 0 ? u128(-split.f) : u128(split.f);
      if (2 * f_abs > sc.ps.b_enc_f) {
        violated = true;
        break;
      }
      t_c[i] = split.t;
    }
    if (!violated && !in_code(sc.mp, sc.parity, t_c)) violated = true;
    if (violated) return 1 - c;
  }
  return std::nullopt;
}

ShareExtract share_extract(const SigmaContext& sc, const Gadget& g,
                           const ShareStatement& stmt, const ShareRep& rep0,
                           const ShareRep& rep1) {
  require(rep0.c == 0 && rep1.c == 1,
          "share extract: need transcripts for both challenges");
  require(rep0.first.a1 == rep1.first.a1 && rep0.first.a2 == rep1.first.a2,
          "share extract: transcripts must share the first message");
  require(share_verify(sc, g.a, stmt, rep0) &&
              share_verify(sc, g.a, stmt, rep1),
          "share extract: transcripts must verify");
  const u32 n = sc.ps.n;
  ShareExtract out;
  out.r.resize(n);
  out.f.resize(n);
  out.m.resize(n);
  for (u32 i = 0; i < n; ++i) {
    const KeyParts kp = sound_key_parts(sc, g, stmt.pk[i]);
    out.r[i].resize(sc.ps.u);
    for (u32 j = 0; j < sc.ps.u; ++j)
      out.r[i][j] = rep1.resp.z[i][j] - rep0.resp.z[i][j];
    const i128 dh = rep1.resp.h[i] - rep0.resp.h[i];
    i128 f = dh;
    for (u32 j = 0; j < sc.ps.u; ++j) f += kp.e[j] * out.r[i][j];
    out.f[i] = f;
    out.m[i] = sc.mp.sub(rep1.resp.t[i], rep0.resp.t[i]);

    // Confirm by direct decryption: c2 - s^T c1 = p m + f mod q.
    const u128 x = sc.mq.sub(
        sc.mq.reduce(stmt.ct[i].c2),
        dot(sc.mq, kp.s_res,
            reduce_vec(sc.mq, stmt.ct[i].c1)));
    const u128 want =
        sc.mq.add(sc.mq.reduce(sc.ps.p * out.m[i]), from_centered(f, sc.ps.q));
    require(x == want, "share extract: decryption confirmation failed");
  }
  require(in_code(sc.mp, sc.parity, out.m),
          "share extract: extracted shares are off-code");
  return out;
}

}  // namespace lpvss
