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
                     const DecStatement& stmt) {
  require(a.rows == sc.ps.v && a.cols == sc.ps.u,
          "dec argument: matrix shape mismatch");
  require(stmt.b.size() == sc.ps.u && stmt.ct.c1.size() == sc.ps.v,
          "dec argument: statement shape mismatch");
  require(stmt.m < sc.ps.p, "dec argument: claimed plaintext out of range");
}

// c2 - p*m, the value the opened linear relation targets.
u128 dec_target(const SigmaContext& sc, const DecStatement& stmt) {
  return sc.mq.sub(sc.mq.reduce(stmt.ct.c2), sc.ps.p * stmt.m);
}

// z^T A + t^T for signed (z, t), as residues.
std::vector<u128> masked_row(const SigmaContext& sc, const Mat& a,
                             const std::vector<i128>& z,
                             const std::vector<i128>& t) {
  std::vector<u128> za = vec_mat(sc.mq, to_res(sc.mq, z), a);
  for (u32 j = 0; j < sc.ps.u; ++j)
    za[j] = sc.mq.add(za[j], from_centered(t[j], sc.ps.q));
  return za;
}

}  // namespace

DecState dec_commit(const SigmaContext& sc, const Mat& a,
                    const DecStatement& stmt, ChaChaRng& rng) {
  check_statement(sc, a, stmt);
  DecState st;
  st.r = sc.w_dec.sample_vec(rng, sc.ps.v);
  st.kv = sc.w_dec.sample_vec(rng, sc.ps.u);
  st.ks = sc.w_dec.sample(rng);
  st.first.d = masked_row(sc, a, st.r, st.kv);
  st.first.h = sc.mq.add(
      dot(sc.mq, to_res(sc.mq, st.r), reduce_vec(sc.mq, stmt.ct.c1)),
      from_centered(st.ks, sc.ps.q));
  return st;
}

DecResponse dec_respond_raw(const SigmaContext& sc, const DecState& st,
                            const DecWitness& wit, unsigned c) {
  require(c <= 1, "dec respond: challenge must be a bit");
  require(st.r.size() == sc.ps.v && st.kv.size() == sc.ps.u,
          "dec respond: state shape mismatch");
  require(wit.s.size() == sc.ps.v && wit.e.size() == sc.ps.u,
          "dec respond: witness shape mismatch");
  DecResponse resp;
  resp.z = add_scaled(st.r, wit.s, c);
  resp.t = add_scaled(st.kv, wit.e, c);
  resp.t_sc = st.ks + (c ? wit.f : i128(0));
  return resp;
}

std::vector<i128> dec_shift(const DecWitness& wit, unsigned c) {
  require(c <= 1, "dec shift: challenge must be a bit");
  std::vector<i128> out;
  out.reserve(wit.s.size() + wit.e.size() + 1);
  if (c) {
    append(out, wit.s);
    append(out, wit.e);
    out.push_back(wit.f);
  } else {
    out.assign(wit.s.size() + wit.e.size() + 1, 0);
  }
  return out;
}

std::vector<i128> dec_gauss(const DecResponse& resp) {
  std::vector<i128> out;
  out.reserve(resp.z.size() + resp.t.size() + 1);
  append(out, resp.z);
  append(out, resp.t);
  out.push_back(resp.t_sc);
  return out;
}

std::optional<DecResponse> dec_respond(const SigmaContext& sc,
                                       const DecState& st,
                                       const DecWitness& wit, unsigned c,
                                       ChaChaRng& rng) {
  DecResponse resp = dec_respond_raw(sc, st, wit, c);
  if (!reject_filter(rng, dec_gauss(resp), dec_shift(wit, c),
                     sc.ps.sigma_dec(), sc.ps.lnm_dec_q96))
    return std::nullopt;
  return resp;
}

bool dec_verify(const SigmaContext& sc, const Mat& a, const DecStatement& stmt,
                const DecRep& rep) {
  if (a.rows != sc.ps.v || a.cols != sc.ps.u) return false;
  if (rep.c > 1 || stmt.b.size() != sc.ps.u) return false;
  if (stmt.ct.c1.size() != sc.ps.v || stmt.m >= sc.ps.p) return false;
  if (rep.first.d.size() != sc.ps.u) return false;
  if (rep.resp.z.size() != sc.ps.v || rep.resp.t.size() != sc.ps.u)
    return false;
  if (!norm2_le(dec_gauss(rep.resp), sc.ps.dec_sig_norm2())) return false;

  const std::vector<u128> lhs = masked_row(sc, a, rep.resp.z, rep.resp.t);
  for (u32 j = 0; j < sc.ps.u; ++j) {
    u128 rhs = sc.mq.reduce(rep.first.d[j]);
    if (rep.c) rhs = sc.mq.add(rhs, sc.mq.reduce(stmt.b[j]));
    if (lhs[j] != rhs) return false;
  }
  u128 open = dot(sc.mq, to_res(sc.mq, rep.resp.z),
                  reduce_vec(sc.mq, stmt.ct.c1));
  open = sc.mq.add(open, from_centered(rep.resp.t_sc, sc.ps.q));
  u128 rhs = sc.mq.reduce(rep.first.h);
  if (rep.c) rhs = sc.mq.add(rhs, dec_target(sc, stmt));
  return open == rhs;
}

DecRep dec_simulate(const SigmaContext& sc, const Mat& a,
                    const DecStatement& stmt, unsigned c, ChaChaRng& rng) {
  check_statement(sc, a, stmt);
  require(c <= 1, "dec simulate: challenge must be a bit");
  for (int tries = 0; tries < 1024; ++tries) {
    DecResponse resp;
    resp.z = sc.w_dec.sample_vec(rng, sc.ps.v);
    resp.t = sc.w_dec.sample_vec(rng, sc.ps.u);
    resp.t_sc = sc.w_dec.sample(rng);
    if (!release_coin(rng, sc.ps.lnm_dec_q96)) continue;
    DecRep rep;
    rep.c = c;
    rep.first.d = masked_row(sc, a, resp.z, resp.t);
    if (c)
      for (u32 j = 0; j < sc.ps.u; ++j)
        rep.first.d[j] = sc.mq.sub(rep.first.d[j], sc.mq.reduce(stmt.b[j]));
    u128 h = dot(sc.mq, to_res(sc.mq, resp.z),
                 reduce_vec(sc.mq, stmt.ct.c1));
    h = sc.mq.add(h, from_centered(resp.t_sc, sc.ps.q));
    if (c) h = sc.mq.sub(h, dec_target(sc, stmt));
    rep.first.h = h;
    rep.resp = std::move(resp);
    return rep;
  }
  throw SamplingError("dec simulate: release coin exhausted");
}

std::optional<unsigned> dec_bad_challenge(const SigmaContext& sc,
                                          const Gadget& g,
                                          const DecStatement& stmt,
                                          const DecFirst& first) {
  require(g.v == sc.ps.v && g.u == sc.ps.u && g.mod.q == sc.ps.q,
          "dec bad-challenge: trapdoor does not match parameters");
  require(stmt.b.size() == sc.ps.u && stmt.ct.c1.size() == sc.ps.v,
          "dec bad-challenge: statement shape mismatch");
  require(stmt.m < sc.ps.p, "dec bad-challenge: plaintext out of range");
  require(first.d.size() == sc.ps.u,
          "dec bad-challenge: first message shape mismatch");
  // The three pieces of a would-be response must each stay within half the
  // relaxed bound; b_dec_star2 is 4 (u+v+1) sigma^2, so quartering is exact.
  const u128 quarter = sc.ps.b_dec_star2 >> 2;
  const std::vector<u128> c1_res = reduce_vec(sc.mq, stmt.ct.c1);
  for (unsigned c = 0; c <= 1; ++c) {
    std::vector<u128> target(sc.ps.u);
    for (u32 j = 0; j < sc.ps.u; ++j) {
      target[j] = sc.mq.reduce(first.d[j]);
      if (c) target[j] = sc.mq.add(target[j], sc.mq.reduce(stmt.b[j]));
    }
    const auto inv = gadget_invert(g, target);
    bool violated = !inv.has_value();
    if (!violated) {
      const std::vector<i128> z_c = center_vec(sc.mq, inv->s);
      violated = !norm2_le(z_c, quarter) || !norm2_le(inv->e, quarter);
      if (!violated) {
        u128 val = sc.mq.reduce(first.h);
        if (c) val = sc.mq.add(val, dec_target(sc, stmt));
        val = sc.mq.sub(val, dot(sc.mq, inv->s, c1_res));
        const i128 t_sc = center_lift(val % sc.ps.p, sc.ps.p);
        const u128 t_abs = t_sc < 0 ? u128(-t_sc) : u128(t_sc);
        violated = 4 * t_abs * t_abs > sc.ps.b_dec_star2;
      }
    }
    if (violated) return 1 - c;
  }
  return std::nullopt;
}

DecExtract dec_extract(const SigmaContext& sc, const Mat& a,
                       const DecStatement& stmt, const DecRep& rep0,
                       const DecRep& rep1) {
  require(rep0.c == 0 && rep1.c == 1,
          "dec extract: need transcripts for both challenges");
  require(rep0.first.d == rep1.first.d && rep0.first.h == rep1.first.h,
          "dec extract: transcripts must share the first message");
  require(dec_verify(sc, a, stmt, rep0) && dec_verify(sc, a, stmt, rep1),
          "dec extract: transcripts must verify");
  DecExtract out;
  out.s.resize(sc.ps.v);
  out.e.resize(sc.ps.u);
  for (u32 i = 0; i < sc.ps.v; ++i)
    out.s[i] = rep1.resp.z[i] - rep0.resp.z[i];
  for (u32 j = 0; j < sc.ps.u; ++j)
    out.e[j] = rep1.resp.t[j] - rep0.resp.t[j];
  out.f = rep1.resp.t_sc - rep0.resp.t_sc;
  return out;
}

}  // namespace lpvss
