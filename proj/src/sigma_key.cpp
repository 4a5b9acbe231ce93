#include "lpvss/sigma.hpp"

#include "sigma_internal.hpp"

namespace lpvss {

using sigma_detail::add_scaled;
using sigma_detail::append;
using sigma_detail::center_vec;
using sigma_detail::to_res;

namespace {

// z^T A + t^T for signed (z, t), as residues.
std::vector<u128> masked_row(const SigmaContext& sc, const Mat& a,
                             const std::vector<i128>& z,
                             const std::vector<i128>& t) {
  std::vector<u128> za = vec_mat(sc.mq, to_res(sc.mq, z), a);
  for (u32 j = 0; j < sc.ps.u; ++j)
    za[j] = sc.mq.add(za[j], from_centered(t[j], sc.ps.q));
  return za;
}

void check_matrix(const SigmaContext& sc, const Mat& a) {
  require(a.rows == sc.ps.v && a.cols == sc.ps.u,
          "key argument: matrix shape mismatch");
}

}  // namespace

KeyState key_commit(const SigmaContext& sc, const Mat& a, ChaChaRng& rng) {
  check_matrix(sc, a);
  KeyState st;
  st.r = sc.w_key.sample_vec(rng, sc.ps.v);
  st.f = sc.w_key.sample_vec(rng, sc.ps.u);
  st.first.d = masked_row(sc, a, st.r, st.f);
  return st;
}

KeyResponse key_respond_raw(const SigmaContext& sc, const KeyState& st,
                            const std::vector<i128>& s,
                            const std::vector<i128>& e, unsigned c) {
  require(c <= 1, "key respond: challenge must be a bit");
  require(st.r.size() == sc.ps.v && st.f.size() == sc.ps.u,
          "key respond: state shape mismatch");
  require(s.size() == sc.ps.v && e.size() == sc.ps.u,
          "key respond: witness shape mismatch");
  return {add_scaled(st.r, s, c), add_scaled(st.f, e, c)};
}

std::vector<i128> key_shift(const std::vector<i128>& s,
                            const std::vector<i128>& e, unsigned c) {
  require(c <= 1, "key shift: challenge must be a bit");
  std::vector<i128> out;
  out.reserve(s.size() + e.size());
  if (c) {
    append(out, s);
    append(out, e);
  } else {
    out.assign(s.size() + e.size(), 0);
  }
  return out;
}

std::vector<i128> key_gauss(const KeyResponse& resp) {
  std::vector<i128> out;
  out.reserve(resp.z.size() + resp.t.size());
  append(out, resp.z);
  append(out, resp.t);
  return out;
}

std::optional<KeyResponse> key_respond(const SigmaContext& sc,
                                       const KeyState& st,
                                       const std::vector<i128>& s,
                                       const std::vector<i128>& e, unsigned c,
                                       ChaChaRng& rng) {
  KeyResponse resp = key_respond_raw(sc, st, s, e, c);
  if (!reject_filter(rng, key_gauss(resp), key_shift(s, e, c),
                     sc.ps.sigma_key(), sc.ps.lnm_key_q96))
    return std::nullopt;
  return resp;
}

bool key_verify(const SigmaContext& sc, const Mat& a,
                const std::vector<u128>& b, const KeyRep& rep) {
  if (a.rows != sc.ps.v || a.cols != sc.ps.u) return false;
  if (rep.c > 1 || b.size() != sc.ps.u) return false;
  if (rep.first.d.size() != sc.ps.u) return false;
  if (rep.resp.z.size() != sc.ps.v || rep.resp.t.size() != sc.ps.u)
    return false;
  if (!norm2_le(key_gauss(rep.resp), sc.ps.key_sig_norm2())) return false;
  const std::vector<u128> lhs = masked_row(sc, a, rep.resp.z, rep.resp.t);
  for (u32 j = 0; j < sc.ps.u; ++j) {
    u128 rhs = sc.mq.reduce(rep.first.d[j]);
    if (rep.c) rhs = sc.mq.add(rhs, sc.mq.reduce(b[j]));
    if (lhs[j] != rhs) return false;
  }
  return true;
}

KeyRep key_simulate(const SigmaContext& sc, const Mat& a,
                    const std::vector<u128>& b, unsigned c, ChaChaRng& rng) {
  check_matrix(sc, a);
  require(c <= 1, "key simulate: challenge must be a bit");
  require(b.size() == sc.ps.u, "key simulate: statement shape mismatch");
  for (int tries = 0; tries < 1024; ++tries) {
    KeyResponse resp;
    resp.z = sc.w_key.sample_vec(rng, sc.ps.v);
    resp.t = sc.w_key.sample_vec(rng, sc.ps.u);
    if (!release_coin(rng, sc.ps.lnm_key_q96)) continue;
    KeyRep rep;
    rep.c = c;
    rep.first.d = masked_row(sc, a, resp.z, resp.t);
    if (c)
      for (u32 j = 0; j < sc.ps.u; ++j)
        rep.first.d[j] = sc.mq.sub(rep.first.d[j], sc.mq.reduce(b[j]));
    rep.resp = std::move(resp);
    return rep;
  }
  throw SamplingError("key simulate: release coin exhausted");
}

std::optional<unsigned> key_bad_challenge(const SigmaContext& sc,
                                          const Gadget& g,
                                          const std::vector<u128>& b,
                                          const KeyFirst& first) {
  require(g.v == sc.ps.v && g.u == sc.ps.u && g.mod.q == sc.ps.q,
          "key bad-challenge: trapdoor does not match parameters");
  require(b.size() == sc.ps.u && first.d.size() == sc.ps.u,
          "key bad-challenge: statement shape mismatch");
  for (unsigned c = 0; c <= 1; ++c) {
    std::vector<u128> target(sc.ps.u);
    for (u32 j = 0; j < sc.ps.u; ++j) {
      target[j] = sc.mq.reduce(first.d[j]);
      if (c) target[j] = sc.mq.add(target[j], sc.mq.reduce(b[j]));
    }
    const auto inv = gadget_invert(g, target);
    bool violated = !inv.has_value();
    if (!violated) {
      std::vector<i128> zt = center_vec(sc.mq, inv->s);
      append(zt, inv->e);
      violated = !norm2_le(zt, sc.ps.key_sig_norm2());
    }
    if (violated) return 1 - c;
  }
  return std::nullopt;
}

KeyExtract key_extract(const SigmaContext& sc, const Mat& a,
                       const std::vector<u128>& b, const KeyRep& rep0,
                       const KeyRep& rep1) {
  require(rep0.c == 0 && rep1.c == 1,
          "key extract: need transcripts for both challenges");
  require(rep0.first.d == rep1.first.d,
          "key extract: transcripts must share the first message");
  require(key_verify(sc, a, b, rep0) && key_verify(sc, a, b, rep1),
          "key extract: transcripts must verify");
  KeyExtract out;
  out.s.resize(sc.ps.v);
  out.e.resize(sc.ps.u);
  for (u32 i = 0; i < sc.ps.v; ++i)
    out.s[i] = rep1.resp.z[i] - rep0.resp.z[i];
  for (u32 j = 0; j < sc.ps.u; ++j)
    out.e[j] = rep1.resp.t[j] - rep0.resp.t[j];
  return out;
}

}  // namespace lpvss
