#include "lpvss/nizk.hpp"

#include <utility>

#include "lpvss/reject.hpp"
#include "lpvss/shake.hpp"
#include "sigma_internal.hpp"

namespace lpvss {
namespace {

using sigma_detail::to_res;

// ------------------------------------------------------------- bytes ----

void put_u16be(std::vector<u8>& out, u32 x) {
  out.push_back(u8(x >> 8));
  out.push_back(u8(x));
}

void put_u32be(std::vector<u8>& out, u64 x) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(u8(x >> s));
}

void put_res16(std::vector<u8>& out, u128 x) {
  for (int i = 0; i < 16; ++i) out.push_back(u8(x >> (8 * i)));
}

void put_u64le(std::vector<u8>& out, u128 x) {
  require(x >> 64 == 0, "wire: residue exceeds eight bytes");
  for (int i = 0; i < 8; ++i) out.push_back(u8(x >> (8 * i)));
}

void put_i64le(std::vector<u8>& out, i128 x) {
  require(x > -(i128(1) << 63) && x < (i128(1) << 63),
          "wire: response entry exceeds eight bytes");
  u64 enc = u64(i64(x));
  for (int i = 0; i < 8; ++i) out.push_back(u8(enc >> (8 * i)));
}

// Sequential reader; all take() paths are length-guarded by the caller
// checking ok() (decoders return nullopt instead of throwing).
struct Cursor {
  const std::vector<u8>& buf;
  std::size_t pos = 0;
  bool fail = false;

  explicit Cursor(const std::vector<u8>& b) : buf(b) {}
  bool need(std::size_t n) {
    if (fail || buf.size() - pos < n) fail = true;
    return !fail;
  }
  u8 take_u8() { return need(1) ? buf[pos++] : 0; }
  u32 take_u16be() {
    if (!need(2)) return 0;
    u32 x = (u32(buf[pos]) << 8) | buf[pos + 1];
    pos += 2;
    return x;
  }
  u64 take_u32be() {
    if (!need(4)) return 0;
    u64 x = 0;
    for (int i = 0; i < 4; ++i) x = (x << 8) | buf[pos + i];
    pos += 4;
    return x;
  }
  u128 take_res16() {
    if (!need(16)) return 0;
    u128 x = 0;
    for (int i = 15; i >= 0; --i) x = (x << 8) | buf[pos + i];
    pos += 16;
    return x;
  }
  u128 take_u64le() {
    if (!need(8)) return 0;
    u64 x = 0;
    for (int i = 7; i >= 0; --i) x = (x << 8) | buf[pos + i];
    pos += 8;
    return x;
  }
  i128 take_i64le() {
    u64 raw = u64(take_u64le());
    return i128(i64(raw));
  }
  bool done() const { return !fail && pos == buf.size(); }
};

// -------------------------------------------------- crs and challenges ----

void absorb_ledger(Shake256& h, const ParamSet& ps) {
  const u128 fields[20] = {
      ps.n,           ps.t,           ps.v,           ps.lambda_rep,
      ps.p,           ps.u,           ps.k,           ps.u0,
      ps.alpha_q,     ps.beta_q_x2,   ps.r_w,         ps.sigma_key_q32,
      ps.sigma_enc_q32, ps.sigma_dec_q32, ps.b_key_star2, ps.b_enc_f,
      ps.b_dec_star2, ps.lnm_key_q96, ps.lnm_enc_q96, ps.lnm_dec_q96};
  std::vector<u8> buf;
  buf.reserve(20 * 16);
  for (u128 f : fields) put_res16(buf, f);
  h.absorb(buf);
}

bool params_same(const ParamSet& a, const ParamSet& b) {
  return a.n == b.n && a.t == b.t && a.v == b.v &&
         a.lambda_rep == b.lambda_rep && a.p == b.p && a.u == b.u &&
         a.sigma_key_q32 == b.sigma_key_q32 &&
         a.sigma_enc_q32 == b.sigma_enc_q32 &&
         a.sigma_dec_q32 == b.sigma_dec_q32;
}

void check_crs(const SigmaContext& sc, const Crs& crs, Lang lang) {
  require(crs.lang == lang, "nizk: proof language does not match the crs");
  require(params_same(sc.ps, crs.ps),
          "nizk: sigma context and crs disagree on parameters");
  require(crs.a.rows == sc.ps.v && crs.a.cols == sc.ps.u,
          "nizk: crs matrix shape");
}

// ------------------------------------------------- first-message bytes ----

std::vector<u8> key_firsts_bytes(const std::vector<KeyRep>& reps) {
  std::vector<u8> out;
  for (const KeyRep& r : reps) {
    put_u32be(out, 16 * r.first.d.size());
    for (u128 x : r.first.d) put_res16(out, x);
  }
  return out;
}

std::vector<u8> share_firsts_bytes(const std::vector<ShareRep>& reps) {
  std::vector<u8> out;
  for (const ShareRep& r : reps) {
    std::size_t entries = r.first.a2.size();
    for (const auto& row : r.first.a1) entries += row.size();
    put_u32be(out, 16 * entries);
    for (const auto& row : r.first.a1)
      for (u128 x : row) put_res16(out, x);
    for (u128 x : r.first.a2) put_res16(out, x);
  }
  return out;
}

std::vector<u8> dec_firsts_bytes(const std::vector<DecRep>& reps) {
  std::vector<u8> out;
  for (const DecRep& r : reps) {
    put_u32be(out, 16 * (r.first.d.size() + 1));
    for (u128 x : r.first.d) put_res16(out, x);
    put_res16(out, r.first.h);
  }
  return out;
}

// ------------------------------------------------------ witness checks ----

void precheck_key(const SigmaContext& sc, const Mat& a,
                  const std::vector<u128>& b, const std::vector<i128>& s,
                  const std::vector<i128>& e) {
  const ParamSet& ps = sc.ps;
  if (b.size() != ps.u || s.size() != ps.v || e.size() != ps.u)
    throw PreconditionError("key prover: statement/witness shape");
  if (!norm2_le(s, ps.keygen_s2()) || !norm2_le(e, ps.keygen_e2()))
    throw PreconditionError("key prover: witness norms outside honest radii");
  std::vector<u128> row = vec_mat(sc.mq, to_res(sc.mq, s), a);
  for (u32 j = 0; j < ps.u; ++j)
    if (sc.mq.add(row[j], from_centered(e[j], ps.q)) != sc.mq.reduce(b[j]))
      throw PreconditionError("key prover: b != s^T A + e");
}

void precheck_share(const SigmaContext& sc, const Mat& a,
                    const ShareStatement& stmt, const ShareWitness& wit) {
  const ParamSet& ps = sc.ps;
  if (stmt.pk.size() != ps.n || stmt.ct.size() != ps.n ||
      wit.enc.size() != ps.n || wit.m.size() != ps.n)
    throw PreconditionError("share prover: statement/witness shape");
  for (u32 i = 0; i < ps.n; ++i) {
    const EncWitness& ew = wit.enc[i];
    if (stmt.pk[i].size() != ps.u || stmt.ct[i].c1.size() != ps.v ||
        ew.r.size() != ps.u)
      throw PreconditionError("share prover: statement/witness shape");
    if (wit.m[i] >= ps.p)
      throw PreconditionError("share prover: share entry outside [0, p)");
    if (ew.e <= -(i128(1) << 60) || ew.e >= (i128(1) << 60))
      throw PreconditionError("share prover: scalar noise out of range");
    if (!norm2_le(ew.r, ps.enc_r2()) ||
        u128(4) * u128(ew.e * ew.e) > ps.enc_e2_x4())
      throw PreconditionError("share prover: randomness outside honest radii");
    std::vector<u128> r_res = to_res(sc.mq, ew.r);
    std::vector<u128> c1 = mat_vec(sc.mq, a, r_res);
    for (u32 j = 0; j < ps.v; ++j)
      if (c1[j] != sc.mq.reduce(stmt.ct[i].c1[j]))
        throw PreconditionError("share prover: c1 != A r");
    u128 c2 = sc.mq.add(
        sc.mq.add(dot(sc.mq, sigma_detail::reduce_vec(sc.mq, stmt.pk[i]),
                      r_res),
                  from_centered(ew.e, ps.q)),
        sc.mq.mul(ps.p, wit.m[i]));
    if (c2 != sc.mq.reduce(stmt.ct[i].c2))
      throw PreconditionError("share prover: c2 != b r + e + p m");
  }
  if (!in_code(sc.mp, sc.parity, wit.m))
    throw PreconditionError("share prover: share vector off the code");
}

void precheck_dec(const SigmaContext& sc, const Mat& a,
                  const DecStatement& stmt, const DecWitness& wit) {
  const ParamSet& ps = sc.ps;
  if (stmt.b.size() != ps.u || stmt.ct.c1.size() != ps.v ||
      wit.s.size() != ps.v || wit.e.size() != ps.u)
    throw PreconditionError("dec prover: statement/witness shape");
  if (stmt.m >= ps.p)
    throw PreconditionError("dec prover: claim outside [0, p)");
  // The key may be a relaxed one (e.g. recovered by the extractor), so the
  // gate is the verification radius, not the honest sampling radius.
  if (!norm2_le(wit.s, ps.b_key_star2))
    throw PreconditionError("dec prover: secret outside verification radius");
  std::vector<u128> row = vec_mat(sc.mq, to_res(sc.mq, wit.s), a);
  std::vector<i128> diff(ps.u);
  for (u32 j = 0; j < ps.u; ++j)
    diff[j] = center_lift(sc.mq.sub(sc.mq.reduce(stmt.b[j]), row[j]), ps.q);
  if (!norm2_le(diff, ps.b_key_star2))
    throw PreconditionError("dec prover: posted row outside verification radius");
  for (u32 j = 0; j < ps.u; ++j)
    if (diff[j] != wit.e[j])
      throw PreconditionError("dec prover: e != b - s^T A");
  u128 fabs = wit.f < 0 ? u128(0) - u128(wit.f) : u128(wit.f);
  if (fabs > ps.b_enc_f)
    throw PreconditionError("dec prover: offset outside its bound");
  u128 rhs = sc.mq.add(
      sc.mq.add(dot(sc.mq, to_res(sc.mq, wit.s),
                    sigma_detail::reduce_vec(sc.mq, stmt.ct.c1)),
                sc.mq.mul(ps.p, stmt.m)),
      from_centered(wit.f, ps.q));
  if (rhs != sc.mq.reduce(stmt.ct.c2))
    throw PreconditionError("dec prover: c2 != s^T c1 + p m + f");
}

constexpr int kMaxRestarts = 1024;

}  // namespace

// ---------------------------------------------------------- public crs ----

std::array<u8, 32> crs_fingerprint(const ParamSet& ps, const Mat& a) {
  require(a.rows == ps.v && a.cols == ps.u, "fingerprint: matrix shape");
  Shake256 h;
  h.absorb_str("lpvss-crs-v1");
  absorb_ledger(h, ps);
  std::vector<u8> buf;
  buf.reserve(16 * a.a.size());
  for (u128 x : a.a) put_res16(buf, x);
  h.absorb(buf);
  h.finalize();
  std::array<u8, 32> fp;
  h.squeeze(fp.data(), fp.size());
  return fp;
}

Crs crs_from_matrix(const ParamSet& ps, Lang lang, Mat a) {
  require(validate_params(ps).empty(), "crs: invalid parameter set");
  Crs crs;
  crs.mode = CrsMode::real;
  crs.lang = lang;
  crs.ps = ps;
  crs.fp = crs_fingerprint(ps, a);
  crs.a = std::move(a);
  return crs;
}

Crs crs_restrict_count(const Crs& base, u32 n_prime) {
  require(base.lang == Lang::share, "restrict: sharing language only");
  require(n_prime >= base.ps.t + 1 && n_prime <= base.ps.n,
          "restrict: count outside (t, n]");
  Crs crs = base;
  crs.ps.n = n_prime;
  crs.fp = crs_fingerprint(crs.ps, crs.a);
  return crs;
}

Crs crs_from_gadget(const ParamSet& ps, Lang lang, Gadget g) {
  require(g.v == ps.v && g.u == ps.u && g.mod.q == ps.q,
          "crs: decoder shape does not match the parameter set");
  Crs crs = crs_from_matrix(ps, lang, g.a);
  crs.mode = CrsMode::trapdoored;
  crs.td = std::move(g);
  return crs;
}

Crs crs_gen(const ParamSet& ps, Lang lang, CrsMode mode, ChaChaRng& rng) {
  require(validate_params(ps).empty(), "crs: invalid parameter set");
  if (mode == CrsMode::trapdoored)
    return crs_from_gadget(ps, lang, gadget_keygen(ps.q, ps.v, ps.u0, rng));
  Mat a(ps.v, ps.u);
  for (u128& x : a.a) x = rng.below_u128(ps.q);
  return crs_from_matrix(ps, lang, std::move(a));
}

std::vector<unsigned> derive_challenges(const Crs& crs,
                                        const std::vector<u8>& statement_bytes,
                                        const std::vector<u8>& firsts_bytes,
                                        u32 lambda_rep) {
  require(lambda_rep > 0, "challenges: zero repetitions");
  Shake256 h;
  h.absorb_str("lpvss-chal-v1");
  u8 lang = u8(crs.lang);
  h.absorb(&lang, 1);
  h.absorb(crs.fp.data(), crs.fp.size());
  u8 len[8];
  for (int i = 0; i < 8; ++i) len[i] = u8(u64(statement_bytes.size()) >> (56 - 8 * i));
  h.absorb(len, 8);
  h.absorb(statement_bytes);
  for (int i = 0; i < 8; ++i) len[i] = u8(u64(firsts_bytes.size()) >> (56 - 8 * i));
  h.absorb(len, 8);
  h.absorb(firsts_bytes);
  h.finalize();
  std::vector<u8> raw((lambda_rep + 7) / 8);
  h.squeeze(raw.data(), raw.size());
  std::vector<unsigned> bits(lambda_rep);
  for (u32 j = 0; j < lambda_rep; ++j) bits[j] = (raw[j >> 3] >> (j & 7)) & 1;
  return bits;
}

// --------------------------------------------------- statement codecs ----

std::vector<u8> key_statement_bytes(const ParamSet& ps,
                                    const std::vector<u128>& b) {
  require(b.size() == ps.u, "key statement: row length");
  std::vector<u8> out;
  put_u32be(out, 16 * b.size());
  for (u128 x : b) put_res16(out, x);
  return out;
}

std::vector<u8> share_statement_bytes(const ParamSet& ps,
                                      const ShareStatement& stmt) {
  require(stmt.pk.size() == ps.n && stmt.ct.size() == ps.n,
          "share statement: participant count");
  std::vector<u8> out;
  put_u32be(out, u64(16) * ps.n * ps.u);
  for (const auto& row : stmt.pk) {
    require(row.size() == ps.u, "share statement: key row length");
    for (u128 x : row) put_res16(out, x);
  }
  put_u32be(out, u64(16) * ps.n * (ps.v + 1));
  for (const Ciphertext& ct : stmt.ct) {
    require(ct.c1.size() == ps.v, "share statement: ciphertext length");
    for (u128 x : ct.c1) put_res16(out, x);
    put_res16(out, ct.c2);
  }
  return out;
}

std::vector<u8> dec_statement_bytes(const ParamSet& ps,
                                    const DecStatement& stmt) {
  require(stmt.b.size() == ps.u && stmt.ct.c1.size() == ps.v,
          "dec statement: shape");
  std::vector<u8> out;
  put_u32be(out, 16 * stmt.b.size());
  for (u128 x : stmt.b) put_res16(out, x);
  put_u32be(out, 16 * (stmt.ct.c1.size() + 1));
  for (u128 x : stmt.ct.c1) put_res16(out, x);
  put_res16(out, stmt.ct.c2);
  put_u32be(out, 16);
  put_res16(out, stmt.m);
  return out;
}

// ------------------------------------------------------------- proving ----

KeyProof nizk_key_prove(const SigmaContext& sc, const Crs& crs,
                        const std::vector<u128>& b, const std::vector<i128>& s,
                        const std::vector<i128>& e, ChaChaRng& rng,
                        ProveStats* stats) {
  check_crs(sc, crs, Lang::key);
  precheck_key(sc, crs.a, b, s, e);
  const u32 lam = sc.ps.lambda_rep;
  const std::vector<u8> stmt_bytes = key_statement_bytes(sc.ps, b);
  if (stats) stats->restarts = 0;
  for (int round = 0; round < kMaxRestarts; ++round) {
    KeyProof proof;
    proof.reps.resize(lam);
    std::vector<KeyState> states;
    states.reserve(lam);
    for (u32 j = 0; j < lam; ++j) {
      states.push_back(key_commit(sc, crs.a, rng));
      proof.reps[j].first = states[j].first;
    }
    std::vector<unsigned> bits =
        derive_challenges(crs, stmt_bytes, key_firsts_bytes(proof.reps), lam);
    std::vector<i128> gauss, shift;
    for (u32 j = 0; j < lam; ++j) {
      proof.reps[j].c = bits[j];
      proof.reps[j].resp = key_respond_raw(sc, states[j], s, e, bits[j]);
      sigma_detail::append(gauss, key_gauss(proof.reps[j].resp));
      sigma_detail::append(shift, key_shift(s, e, bits[j]));
    }
    if (reject_filter(rng, gauss, shift, sc.ps.sigma_key(),
                      sc.ps.lnm_key_q96))
      return proof;
    if (stats) ++stats->restarts;
  }
  throw SamplingError("key prover: restart cap exhausted");
}

ShareProof nizk_share_prove(const SigmaContext& sc, const Crs& crs,
                            const ShareStatement& stmt,
                            const ShareWitness& wit, ChaChaRng& rng,
                            ProveStats* stats) {
  check_crs(sc, crs, Lang::share);
  precheck_share(sc, crs.a, stmt, wit);
  const u32 lam = sc.ps.lambda_rep;
  const std::vector<u8> stmt_bytes = share_statement_bytes(sc.ps, stmt);
  if (stats) stats->restarts = 0;
  for (int round = 0; round < kMaxRestarts; ++round) {
    ShareProof proof;
    proof.reps.resize(lam);
    std::vector<ShareState> states;
    states.reserve(lam);
    for (u32 j = 0; j < lam; ++j) {
      states.push_back(share_commit(sc, crs.a, stmt, rng));
      proof.reps[j].first = states[j].first;
    }
    std::vector<unsigned> bits = derive_challenges(
        crs, stmt_bytes, share_firsts_bytes(proof.reps), lam);
    std::vector<i128> gauss, shift;
    for (u32 j = 0; j < lam; ++j) {
      proof.reps[j].c = bits[j];
      proof.reps[j].resp = share_respond_raw(sc, states[j], wit, bits[j]);
      sigma_detail::append(gauss, share_gauss(proof.reps[j].resp));
      sigma_detail::append(shift, share_shift(wit, bits[j]));
    }
    if (reject_filter(rng, gauss, shift, sc.ps.sigma_enc(),
                      sc.ps.lnm_enc_q96))
      return proof;
    if (stats) ++stats->restarts;
  }
  throw SamplingError("share prover: restart cap exhausted");
}

DecProof nizk_dec_prove(const SigmaContext& sc, const Crs& crs,
                        const DecStatement& stmt, const DecWitness& wit,
                        ChaChaRng& rng, ProveStats* stats) {
  check_crs(sc, crs, Lang::dec);
  precheck_dec(sc, crs.a, stmt, wit);
  const u32 lam = sc.ps.lambda_rep;
  const std::vector<u8> stmt_bytes = dec_statement_bytes(sc.ps, stmt);
  if (stats) stats->restarts = 0;
  for (int round = 0; round < kMaxRestarts; ++round) {
    DecProof proof;
    proof.reps.resize(lam);
    std::vector<DecState> states;
    states.reserve(lam);
    for (u32 j = 0; j < lam; ++j) {
      states.push_back(dec_commit(sc, crs.a, stmt, rng));
      proof.reps[j].first = states[j].first;
    }
    std::vector<unsigned> bits =
        derive_challenges(crs, stmt_bytes, dec_firsts_bytes(proof.reps), lam);
    std::vector<i128> gauss, shift;
    for (u32 j = 0; j < lam; ++j) {
      proof.reps[j].c = bits[j];
      proof.reps[j].resp = dec_respond_raw(sc, states[j], wit, bits[j]);
      sigma_detail::append(gauss, dec_gauss(proof.reps[j].resp));
      sigma_detail::append(shift, dec_shift(wit, bits[j]));
    }
    if (reject_filter(rng, gauss, shift, sc.ps.sigma_dec(),
                      sc.ps.lnm_dec_q96))
      return proof;
    if (stats) ++stats->restarts;
  }
  throw SamplingError("dec prover: restart cap exhausted");
}

// ---------------------------------------------------------- verifying ----

bool nizk_key_verify(const SigmaContext& sc, const Crs& crs,
                     const std::vector<u128>& b, const KeyProof& proof) {
  check_crs(sc, crs, Lang::key);
  if (proof.reps.size() != sc.ps.lambda_rep || b.size() != sc.ps.u)
    return false;
  std::vector<unsigned> bits =
      derive_challenges(crs, key_statement_bytes(sc.ps, b),
                        key_firsts_bytes(proof.reps), sc.ps.lambda_rep);
  for (u32 j = 0; j < sc.ps.lambda_rep; ++j) {
    KeyRep rep{proof.reps[j].first, bits[j], proof.reps[j].resp};
    if (!key_verify(sc, crs.a, b, rep)) return false;
  }
  return true;
}

bool nizk_share_verify(const SigmaContext& sc, const Crs& crs,
                       const ShareStatement& stmt, const ShareProof& proof) {
  check_crs(sc, crs, Lang::share);
  if (proof.reps.size() != sc.ps.lambda_rep || stmt.pk.size() != sc.ps.n ||
      stmt.ct.size() != sc.ps.n)
    return false;
  for (const auto& row : stmt.pk)
    if (row.size() != sc.ps.u) return false;
  for (const Ciphertext& ct : stmt.ct)
    if (ct.c1.size() != sc.ps.v) return false;
  std::vector<unsigned> bits =
      derive_challenges(crs, share_statement_bytes(sc.ps, stmt),
                        share_firsts_bytes(proof.reps), sc.ps.lambda_rep);
  for (u32 j = 0; j < sc.ps.lambda_rep; ++j) {
    ShareRep rep{proof.reps[j].first, bits[j], proof.reps[j].resp};
    if (!share_verify(sc, crs.a, stmt, rep)) return false;
  }
  return true;
}

bool nizk_dec_verify(const SigmaContext& sc, const Crs& crs,
                     const DecStatement& stmt, const DecProof& proof) {
  check_crs(sc, crs, Lang::dec);
  if (proof.reps.size() != sc.ps.lambda_rep || stmt.b.size() != sc.ps.u ||
      stmt.ct.c1.size() != sc.ps.v)
    return false;
  std::vector<unsigned> bits =
      derive_challenges(crs, dec_statement_bytes(sc.ps, stmt),
                        dec_firsts_bytes(proof.reps), sc.ps.lambda_rep);
  for (u32 j = 0; j < sc.ps.lambda_rep; ++j) {
    DecRep rep{proof.reps[j].first, bits[j], proof.reps[j].resp};
    if (!dec_verify(sc, crs.a, stmt, rep)) return false;
  }
  return true;
}

// --------------------------------------------------------- wire codecs ----

namespace {

constexpr u8 kWireVersion = 0x01;

void put_header(std::vector<u8>& out, const Crs& crs, std::size_t reps) {
  require(reps == crs.ps.lambda_rep, "wire: repetition count mismatch");
  require(reps > 0 && reps < 0x10000, "wire: repetition count range");
  out.push_back(kWireVersion);
  out.push_back(u8(crs.lang));
  put_u16be(out, u32(reps));
}

// Reads the fixed header; true iff version, language, and repetition count
// all match the crs.
bool take_header(Cursor& cur, const Crs& crs) {
  u8 ver = cur.take_u8();
  u8 lang = cur.take_u8();
  u32 reps = cur.take_u16be();
  return !cur.fail && ver == kWireVersion && lang == u8(crs.lang) &&
         reps == crs.ps.lambda_rep;
}

bool take_res_vec(Cursor& cur, u128 mod, std::size_t n,
                  std::vector<u128>& out) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = cur.take_res16();
    if (out[i] >= mod) cur.fail = true;
  }
  return !cur.fail;
}

bool take_int_vec(Cursor& cur, std::size_t n, std::vector<i128>& out) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = cur.take_i64le();
  return !cur.fail;
}

}  // namespace

std::vector<u8> key_proof_encode(const Crs& crs, const KeyProof& proof) {
  const ParamSet& ps = crs.ps;
  std::vector<u8> out;
  put_header(out, crs, proof.reps.size());
  for (const KeyRep& r : proof.reps) {
    require(r.first.d.size() == ps.u && r.resp.z.size() == ps.v &&
                r.resp.t.size() == ps.u,
            "wire: repetition shape");
    put_u32be(out, u64(16) * ps.u);
    for (u128 x : r.first.d) put_res16(out, x);
    put_u32be(out, u64(8) * (ps.v + ps.u));
    for (i128 x : r.resp.z) put_i64le(out, x);
    for (i128 x : r.resp.t) put_i64le(out, x);
  }
  return out;
}

std::optional<KeyProof> key_proof_decode(const Crs& crs,
                                         const std::vector<u8>& bytes) {
  const ParamSet& ps = crs.ps;
  Cursor cur(bytes);
  if (!take_header(cur, crs)) return std::nullopt;
  KeyProof proof;
  proof.reps.resize(ps.lambda_rep);
  for (KeyRep& r : proof.reps) {
    if (cur.take_u32be() != u64(16) * ps.u) return std::nullopt;
    if (!take_res_vec(cur, ps.q, ps.u, r.first.d)) return std::nullopt;
    if (cur.take_u32be() != u64(8) * (ps.v + ps.u)) return std::nullopt;
    if (!take_int_vec(cur, ps.v, r.resp.z)) return std::nullopt;
    if (!take_int_vec(cur, ps.u, r.resp.t)) return std::nullopt;
  }
  if (!cur.done()) return std::nullopt;
  return proof;
}

std::vector<u8> share_proof_encode(const Crs& crs, const ShareProof& proof) {
  const ParamSet& ps = crs.ps;
  std::vector<u8> out;
  put_header(out, crs, proof.reps.size());
  for (const ShareRep& r : proof.reps) {
    require(r.first.a1.size() == ps.n && r.first.a2.size() == ps.n &&
                r.resp.z.size() == ps.n && r.resp.h.size() == ps.n &&
                r.resp.t.size() == ps.n,
            "wire: repetition shape");
    put_u32be(out, u64(16) * ps.n * (ps.v + 1));
    for (const auto& row : r.first.a1) {
      require(row.size() == ps.v, "wire: repetition shape");
      for (u128 x : row) put_res16(out, x);
    }
    for (u128 x : r.first.a2) put_res16(out, x);
    put_u32be(out, u64(8) * ps.n * (ps.u + 2));
    for (const auto& row : r.resp.z) {
      require(row.size() == ps.u, "wire: repetition shape");
      for (i128 x : row) put_i64le(out, x);
    }
    for (i128 x : r.resp.h) put_i64le(out, x);
    for (u128 x : r.resp.t) put_u64le(out, x);
  }
  return out;
}

std::optional<ShareProof> share_proof_decode(const Crs& crs,
                                             const std::vector<u8>& bytes) {
  const ParamSet& ps = crs.ps;
  Cursor cur(bytes);
  if (!take_header(cur, crs)) return std::nullopt;
  ShareProof proof;
  proof.reps.resize(ps.lambda_rep);
  for (ShareRep& r : proof.reps) {
    if (cur.take_u32be() != u64(16) * ps.n * (ps.v + 1)) return std::nullopt;
    r.first.a1.resize(ps.n);
    for (auto& row : r.first.a1)
      if (!take_res_vec(cur, ps.q, ps.v, row)) return std::nullopt;
    if (!take_res_vec(cur, ps.q, ps.n, r.first.a2)) return std::nullopt;
    if (cur.take_u32be() != u64(8) * ps.n * (ps.u + 2)) return std::nullopt;
    r.resp.z.resize(ps.n);
    for (auto& row : r.resp.z)
      if (!take_int_vec(cur, ps.u, row)) return std::nullopt;
    if (!take_int_vec(cur, ps.n, r.resp.h)) return std::nullopt;
    r.resp.t.resize(ps.n);
    for (u128& x : r.resp.t) {
      x = cur.take_u64le();
      if (x >= ps.p) cur.fail = true;
    }
    if (cur.fail) return std::nullopt;
  }
  if (!cur.done()) return std::nullopt;
  return proof;
}

std::vector<u8> dec_proof_encode(const Crs& crs, const DecProof& proof) {
  const ParamSet& ps = crs.ps;
  std::vector<u8> out;
  put_header(out, crs, proof.reps.size());
  for (const DecRep& r : proof.reps) {
    require(r.first.d.size() == ps.u && r.resp.z.size() == ps.v &&
                r.resp.t.size() == ps.u,
            "wire: repetition shape");
    put_u32be(out, u64(16) * (ps.u + 1));
    for (u128 x : r.first.d) put_res16(out, x);
    put_res16(out, r.first.h);
    put_u32be(out, u64(8) * (ps.v + ps.u + 1));
    for (i128 x : r.resp.z) put_i64le(out, x);
    for (i128 x : r.resp.t) put_i64le(out, x);
    put_i64le(out, r.resp.t_sc);
  }
  return out;
}

std::optional<DecProof> dec_proof_decode(const Crs& crs,
                                         const std::vector<u8>& bytes) {
  const ParamSet& ps = crs.ps;
  Cursor cur(bytes);
  if (!take_header(cur, crs)) return std::nullopt;
  DecProof proof;
  proof.reps.resize(ps.lambda_rep);
  for (DecRep& r : proof.reps) {
    if (cur.take_u32be() != u64(16) * (ps.u + 1)) return std::nullopt;
    if (!take_res_vec(cur, ps.q, ps.u, r.first.d)) return std::nullopt;
    r.first.h = cur.take_res16();
    if (r.first.h >= ps.q) return std::nullopt;
    if (cur.take_u32be() != u64(8) * (ps.v + ps.u + 1)) return std::nullopt;
    if (!take_int_vec(cur, ps.v, r.resp.z)) return std::nullopt;
    if (!take_int_vec(cur, ps.u, r.resp.t)) return std::nullopt;
    r.resp.t_sc = cur.take_i64le();
    if (cur.fail) return std::nullopt;
  }
  if (!cur.done()) return std::nullopt;
  return proof;
}

bool nizk_key_verify_bytes(const SigmaContext& sc, const Crs& crs,
                           const std::vector<u128>& b,
                           const std::vector<u8>& bytes) {
  auto proof = key_proof_decode(crs, bytes);
  return proof && nizk_key_verify(sc, crs, b, *proof);
}

bool nizk_share_verify_bytes(const SigmaContext& sc, const Crs& crs,
                             const ShareStatement& stmt,
                             const std::vector<u8>& bytes) {
  auto proof = share_proof_decode(crs, bytes);
  return proof && nizk_share_verify(sc, crs, stmt, *proof);
}

bool nizk_dec_verify_bytes(const SigmaContext& sc, const Crs& crs,
                           const DecStatement& stmt,
                           const std::vector<u8>& bytes) {
  auto proof = dec_proof_decode(crs, bytes);
  return proof && nizk_dec_verify(sc, crs, stmt, *proof);
}

}  // namespace lpvss
