// Dealer argument: the n posted ciphertexts encrypt one degree <= t share
// vector.  Covers completeness through the filter, targeted rejections
// (including an off-code response with repaired linear identities),
// simulator agreement, bad-challenge complementarity for both violation
// flavors (off-code decryptions and oversized decryption offsets), the
// sound-key precondition, and extraction of the share vector.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lpvss/acps.hpp"
#include "lpvss/sigma.hpp"

using namespace lpvss;

namespace {

struct Rig {
  ParamSet ps = derive_params({5, 2, 2, 16});
  SigmaContext sc{ps};
  PkeContext pc{ps};
  Gadget g;
  Rig() {
    ChaChaRng rng(62);
    g = gadget_keygen(ps.q, ps.v, ps.u0, rng);
  }
};

const Rig& rig() {
  static Rig r;
  return r;
}

struct Instance {
  std::vector<KeyPair> keys;
  ShareStatement stmt;
  ShareWitness wit;
  u128 secret = 0;
};

Instance honest_instance(const Rig& r, ChaChaRng& rng) {
  Instance ins;
  ins.secret = rng.below_u128(r.ps.p);
  ins.wit.m = shamir_share(r.sc.mp, r.ps.n, r.ps.t, ins.secret, rng);
  for (u32 i = 0; i < r.ps.n; ++i) {
    ins.keys.push_back(pke_keygen(r.pc, r.g.a, rng));
    ins.stmt.pk.push_back(ins.keys[i].b);
    auto [ct, ew] = pke_enc(r.pc, r.g.a, ins.keys[i].b, ins.wit.m[i], rng);
    ins.stmt.ct.push_back(ct);
    ins.wit.enc.push_back(ew);
  }
  return ins;
}

ShareRep prove_one(const SigmaContext& sc, const Mat& a, const Instance& ins,
                   unsigned c, ChaChaRng& rng, int* attempts) {
  for (int tries = 0; tries < 64; ++tries) {
    ShareState st = share_commit(sc, a, ins.stmt, rng);
    auto resp = share_respond(sc, st, ins.wit, c, rng);
    ++*attempts;
    if (resp) return {st.first, c, *resp};
  }
  throw SamplingError("prove_one: filter never released");
}

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

i128 norm2_of(const std::vector<i128>& v) {
  i128 s = 0;
  for (i128 x : v) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("honest dealer proofs verify for both challenges") {
  const Rig& r = rig();
  ChaChaRng rng(111);
  int attempts = 0;
  for (int trial = 0; trial < 60; ++trial) {
    ChaChaRng sub = rng.fork(trial);
    const Instance ins = honest_instance(r, sub);
    const ShareRep rep = prove_one(r.sc, r.g.a, ins, trial & 1, sub, &attempts);
    REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep));
  }
  CHECK(double(attempts) / 60 < 3.0);
}

TEST_CASE("verifier rejects tampering in every component") {
  const Rig& r = rig();
  ChaChaRng rng(222);
  const Instance ins = honest_instance(r, rng);
  int attempts = 0;
  const ShareRep rep = prove_one(r.sc, r.g.a, ins, 1, rng, &attempts);
  REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep));

  ShareRep bad = rep;
  bad.resp.z[2][5] += 1;
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  bad = rep;
  bad.resp.h[4] -= 1;
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  bad = rep;
  bad.resp.t[1] = r.ps.p;  // out of range
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  bad = rep;
  bad.first.a1[0][0] = r.sc.mq.add(bad.first.a1[0][0], 1);
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  bad = rep;
  bad.first.a2[3] = r.sc.mq.add(bad.first.a2[3], 1);
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  bad = rep;
  bad.c = 0;
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  // Off-code response with both linear identities repaired: only the
  // dual-code check can catch it.
  bad = rep;
  u32 idx = 0;
  while (bad.resp.t[idx] + 1 >= r.ps.p) ++idx;
  bad.resp.t[idx] += 1;
  bad.first.a2[idx] = r.sc.mq.add(bad.first.a2[idx], r.ps.p);
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  // Norm blowup on one block.
  bad = rep;
  for (auto& x : bad.resp.z[0]) x *= 1 << 18;
  CHECK(!share_verify(r.sc, r.g.a, ins.stmt, bad));

  // Statement swap.
  ChaChaRng rng2(223);
  const Instance other = honest_instance(r, rng2);
  CHECK(!share_verify(r.sc, r.g.a, other.stmt, rep));
}

TEST_CASE("simulated dealer transcripts verify, even for junk statements") {
  const Rig& r = rig();
  ChaChaRng rng(333);
  const Instance ins = honest_instance(r, rng);
  for (int i = 0; i < 30; ++i) {
    const ShareRep rep = share_simulate(r.sc, r.g.a, ins.stmt, i & 1, rng);
    CHECK(share_verify(r.sc, r.g.a, ins.stmt, rep));
  }
  ShareStatement junk = ins.stmt;
  for (auto& row : junk.pk)
    for (auto& x : row) x = rng.below_u128(r.ps.q);
  for (auto& ct : junk.ct) {
    for (auto& x : ct.c1) x = rng.below_u128(r.ps.q);
    ct.c2 = rng.below_u128(r.ps.q);
  }
  for (int i = 0; i < 10; ++i) {
    const ShareRep rep = share_simulate(r.sc, r.g.a, junk, i & 1, rng);
    CHECK(share_verify(r.sc, r.g.a, junk, rep));
  }
}

TEST_CASE("released dealer responses are distributed like simulated ones") {
  const Rig& r = rig();
  ChaChaRng rng(444);
  const Instance ins = honest_instance(r, rng);
  const int n = 1200;
  std::vector<i128> real_coord, sim_coord, real_norm, sim_norm;
  int attempts = 0;
  for (int i = 0; i < n; ++i) {
    const ShareRep rep = prove_one(r.sc, r.g.a, ins, i & 1, rng, &attempts);
    real_coord.push_back(rep.resp.z[0][0]);
    real_norm.push_back(norm2_of(share_gauss(rep.resp)));
  }
  for (int i = 0; i < n; ++i) {
    const ShareRep rep = share_simulate(r.sc, r.g.a, ins.stmt, i & 1, rng);
    sim_coord.push_back(rep.resp.z[0][0]);
    sim_norm.push_back(norm2_of(share_gauss(rep.resp)));
  }
  const double crit = 1.95 * std::sqrt(2.0 / n);
  CHECK(ks_stat(std::move(real_coord), std::move(sim_coord)) < crit);
  CHECK(ks_stat(std::move(real_norm), std::move(sim_norm)) < crit);
}

TEST_CASE("bad challenge pins forgeries on off-code statements") {
  const Rig& r = rig();
  ChaChaRng rng(555);
  for (int i = 0; i < 25; ++i) {
    for (unsigned c = 0; c <= 1; ++c) {
      ChaChaRng sub = rng.fork(2 * i + c);
      Instance ins = honest_instance(r, sub);
      // Re-encrypt with one share knocked off the code: sound keys, but
      // the plaintext vector no longer interpolates.
      ins.wit.m[0] = r.sc.mp.add(ins.wit.m[0], 1);
      for (u32 j = 0; j < r.ps.n; ++j) {
        auto [ct, ew] =
            pke_enc(r.pc, r.g.a, ins.keys[j].b, ins.wit.m[j], sub);
        ins.stmt.ct[j] = ct;
        ins.wit.enc[j] = ew;
      }
      const ShareRep rep = share_simulate(r.sc, r.g.a, ins.stmt, c, sub);
      REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep));
      const auto bad = share_bad_challenge(r.sc, r.g, ins.stmt, rep.first);
      REQUIRE(bad.has_value());
      CHECK(*bad == c);
    }
  }
}

TEST_CASE("bad challenge pins forgeries on oversized decryption offsets") {
  const Rig& r = rig();
  ChaChaRng rng(556);
  for (int i = 0; i < 25; ++i) {
    ChaChaRng sub = rng.fork(i);
    Instance ins = honest_instance(r, sub);
    // On-code plaintexts, but one ciphertext dragged so far from the
    // lattice that its decryption offset exceeds half the sound bound.
    ins.stmt.ct[2].c2 = r.sc.mq.add(ins.stmt.ct[2].c2, r.ps.b_enc_f);
    const ShareRep rep = share_simulate(r.sc, r.g.a, ins.stmt, 0, sub);
    REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep));
    const auto bad = share_bad_challenge(r.sc, r.g, ins.stmt, rep.first);
    REQUIRE(bad.has_value());
    CHECK(*bad == 0);
  }
}

TEST_CASE("bad challenge is empty for honest statements and commitments") {
  const Rig& r = rig();
  ChaChaRng rng(557);
  for (int i = 0; i < 10; ++i) {
    const Instance ins = honest_instance(r, rng);
    const ShareState st = share_commit(r.sc, r.g.a, ins.stmt, rng);
    CHECK(!share_bad_challenge(r.sc, r.g, ins.stmt, st.first).has_value());
  }
}

TEST_CASE("sound-key precondition is enforced") {
  const Rig& r = rig();
  ChaChaRng rng(558);
  Instance ins = honest_instance(r, rng);
  for (auto& x : ins.stmt.pk[3]) x = rng.below_u128(r.ps.q);
  const ShareState st = share_commit(r.sc, r.g.a, ins.stmt, rng);
  CHECK_THROWS_AS(share_bad_challenge(r.sc, r.g, ins.stmt, st.first),
                  PreconditionError);
}

TEST_CASE("two accepting transcripts extract the dealt share vector") {
  const Rig& r = rig();
  ChaChaRng rng(777);
  for (int i = 0; i < 50; ++i) {
    const Instance ins = honest_instance(r, rng);
    const ShareState st = share_commit(r.sc, r.g.a, ins.stmt, rng);
    const ShareRep rep0{st.first, 0,
                        share_respond_raw(r.sc, st, ins.wit, 0)};
    const ShareRep rep1{st.first, 1,
                        share_respond_raw(r.sc, st, ins.wit, 1)};
    REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep0));
    REQUIRE(share_verify(r.sc, r.g.a, ins.stmt, rep1));
    const ShareExtract ex = share_extract(r.sc, r.g, ins.stmt, rep0, rep1);
    CHECK(ex.m == ins.wit.m);
    for (u32 j = 0; j < r.ps.n; ++j) {
      CHECK(ex.r[j] == ins.wit.enc[j].r);
      const u128 f_abs = ex.f[j] < 0 ? u128(-ex.f[j]) : u128(ex.f[j]);
      CHECK(f_abs <= r.ps.b_enc_f);
      // Extraction agrees with direct decryption by the key holder.
      CHECK(pke_dec(r.pc, ins.stmt.ct[j], ins.keys[j].s).m == ex.m[j]);
    }
  }
}

TEST_CASE("share operations reject malformed inputs") {
  const Rig& r = rig();
  ChaChaRng rng(888);
  Instance ins = honest_instance(r, rng);
  ShareStatement short_stmt = ins.stmt;
  short_stmt.pk.pop_back();
  CHECK_THROWS_AS(share_commit(r.sc, r.g.a, short_stmt, rng), LogicError);

  const ShareState st = share_commit(r.sc, r.g.a, ins.stmt, rng);
  ShareWitness wrong = ins.wit;
  wrong.m[0] = r.ps.p;  // share out of range
  CHECK_THROWS_AS(share_respond_raw(r.sc, st, wrong, 1), LogicError);
  CHECK_THROWS_AS(share_respond_raw(r.sc, st, ins.wit, 2), LogicError);

  const ShareRep rep0{st.first, 0, share_respond_raw(r.sc, st, ins.wit, 0)};
  ShareRep rep1{st.first, 1, share_respond_raw(r.sc, st, ins.wit, 1)};
  rep1.first.a2[0] = r.sc.mq.add(rep1.first.a2[0], 1);
  CHECK_THROWS_AS(share_extract(r.sc, r.g, ins.stmt, rep0, rep1),
                  LogicError);
}
