// Opening argument: the revealed plaintext m is what the posted ciphertext
// decrypts to under the key behind b, i.e. the prover knows short (s, e, f)
// with b = s^T A + e^T and c2 - p m = s^T c1 + f.  Covers completeness
// through the filter, claim tampering, component tampering, simulator
// agreement, bad-challenge complementarity for the two violation flavors
// the trapdoor detects (undecodable key rows and oversized decryption
// offsets), the mod-p reach of the scalar recovery, and witness extraction.

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
    ChaChaRng rng(63);
    g = gadget_keygen(ps.q, ps.v, ps.u0, rng);
  }
};

const Rig& rig() {
  static Rig r;
  return r;
}

struct Instance {
  KeyPair kp;
  DecStatement stmt;
  DecWitness wit;
};

Instance honest_instance(const Rig& r, ChaChaRng& rng) {
  Instance ins;
  ins.kp = pke_keygen(r.pc, r.g.a, rng);
  u128 m = rng.below_u128(r.ps.p);
  auto [ct, ew] = pke_enc(r.pc, r.g.a, ins.kp.b, m, rng);
  DecResult dec = pke_dec(r.pc, ct, ins.kp.s);
  ins.stmt = DecStatement{ins.kp.b, ct, dec.m};
  ins.wit = DecWitness{ins.kp.s, ins.kp.e, dec.f};
  return ins;
}

DecRep prove_one(const SigmaContext& sc, const Mat& a, const Instance& ins,
                 unsigned c, ChaChaRng& rng, int* attempts) {
  for (int tries = 0; tries < 64; ++tries) {
    DecState st = dec_commit(sc, a, ins.stmt, rng);
    auto resp = dec_respond(sc, st, ins.wit, c, rng);
    ++*attempts;
    if (resp) return {st.first, c, *resp};
  }
  throw SamplingError("prove_one: filter never released");
}

std::vector<u128> random_vec(std::size_t len, u128 mod, ChaChaRng& rng) {
  std::vector<u128> v(len);
  for (auto& x : v) x = rng.below_u128(mod);
  return v;
}

DecStatement junk_statement(const Rig& r, ChaChaRng& rng) {
  DecStatement stmt;
  stmt.b = random_vec(r.ps.u, r.ps.q, rng);
  stmt.ct.c1 = random_vec(r.ps.v, r.ps.q, rng);
  stmt.ct.c2 = rng.below_u128(r.ps.q);
  stmt.m = rng.below_u128(r.ps.p);
  return stmt;
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
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

i128 norm2_of(const std::vector<i128>& v) {
  i128 acc = 0;
  for (i128 x : v) acc += x * x;
  return acc;
}

}  // namespace

TEST_CASE("honest opening proofs verify for both challenges with few retries") {
  const Rig& r = rig();
  ChaChaRng rng(7001);
  int attempts = 0, proofs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Instance ins = honest_instance(r, rng);
    for (unsigned c : {0u, 1u}) {
      DecRep rep = prove_one(r.sc, r.g.a, ins, c, rng, &attempts);
      ++proofs;
      CHECK(dec_verify(r.sc, r.g.a, ins.stmt, rep));
    }
  }
  CHECK(proofs == 60);
  CHECK(double(attempts) / proofs < 3.0);
}

TEST_CASE("a changed or out-of-range plaintext claim defeats verification") {
  const Rig& r = rig();
  ChaChaRng rng(7002);
  int attempts = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Instance ins = honest_instance(r, rng);
    // The claim enters the response identity only when c = 1; a single
    // challenge-0 repetition is claim-blind by construction, so the claim
    // tamper is exercised against challenge 1.
    DecRep rep1 = prove_one(r.sc, r.g.a, ins, 1, rng, &attempts);
    DecStatement wrong = ins.stmt;
    wrong.m = r.sc.mp.add(wrong.m, 1);
    CHECK_FALSE(dec_verify(r.sc, r.g.a, wrong, rep1));

    DecRep rep0 = prove_one(r.sc, r.g.a, ins, 0, rng, &attempts);
    CHECK(dec_verify(r.sc, r.g.a, wrong, rep0));  // claim-blind at c = 0

    DecStatement oob = ins.stmt;
    oob.m = r.ps.p;  // residues must lie in [0, p)
    CHECK_FALSE(dec_verify(r.sc, r.g.a, oob, rep0));
    CHECK_FALSE(dec_verify(r.sc, r.g.a, oob, rep1));
  }
}

TEST_CASE("any tampered transcript component defeats verification") {
  const Rig& r = rig();
  ChaChaRng rng(7003);
  Instance ins = honest_instance(r, rng);
  int attempts = 0;
  for (unsigned c : {0u, 1u}) {
    DecRep rep = prove_one(r.sc, r.g.a, ins, c, rng, &attempts);
    REQUIRE(dec_verify(r.sc, r.g.a, ins.stmt, rep));

    DecRep bad = rep;
    bad.resp.z[0] += 1;
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.resp.t[0] += 1;
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.resp.t_sc += 1;
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.first.d[0] = r.sc.mq.add(bad.first.d[0], 1);
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.first.h = r.sc.mq.add(bad.first.h, 1);
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.c = 1 - bad.c;
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.c = 2;
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    bad = rep;
    bad.resp.z.pop_back();
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));

    // Adding q to one entry preserves both identities mod q but blows up
    // the Euclidean norm: isolates the norm gate.
    bad = rep;
    bad.resp.z[0] += i128(r.ps.q);
    CHECK_FALSE(dec_verify(r.sc, r.g.a, ins.stmt, bad));
  }
}

TEST_CASE("simulated transcripts verify, even for unprovable statements") {
  const Rig& r = rig();
  ChaChaRng rng(7004);
  for (int trial = 0; trial < 15; ++trial) {
    Instance ins = honest_instance(r, rng);
    DecStatement junk = junk_statement(r, rng);
    for (unsigned c : {0u, 1u}) {
      DecRep sim = dec_simulate(r.sc, r.g.a, ins.stmt, c, rng);
      CHECK(sim.c == c);
      CHECK(dec_verify(r.sc, r.g.a, ins.stmt, sim));
      DecRep simj = dec_simulate(r.sc, r.g.a, junk, c, rng);
      CHECK(dec_verify(r.sc, r.g.a, junk, simj));
    }
  }
}

TEST_CASE("real and simulated transcripts are statistically indistinguishable") {
  const Rig& r = rig();
  ChaChaRng rng(7005);
  Instance ins = honest_instance(r, rng);
  const int n = 1200;
  const double crit = 1.95 * std::sqrt(2.0 / n);
  std::vector<i128> real_coord, sim_coord, real_norm, sim_norm;
  int attempts = 0;
  for (int i = 0; i < n; ++i) {
    DecRep rep = prove_one(r.sc, r.g.a, ins, 1, rng, &attempts);
    real_coord.push_back(rep.resp.z[0]);
    real_norm.push_back(norm2_of(dec_gauss(rep.resp)));
    DecRep sim = dec_simulate(r.sc, r.g.a, ins.stmt, 1, rng);
    sim_coord.push_back(sim.resp.z[0]);
    sim_norm.push_back(norm2_of(dec_gauss(sim.resp)));
  }
  CHECK(ks_stat(real_coord, sim_coord) < crit);
  CHECK(ks_stat(real_norm, sim_norm) < crit);
}

TEST_CASE("forged proofs for undecodable key rows land on the trapdoor bit") {
  const Rig& r = rig();
  ChaChaRng rng(7006);
  for (int trial = 0; trial < 25; ++trial) {
    DecStatement junk = junk_statement(r, rng);
    for (unsigned c : {0u, 1u}) {
      DecRep sim = dec_simulate(r.sc, r.g.a, junk, c, rng);
      REQUIRE(dec_verify(r.sc, r.g.a, junk, sim));
      auto bad = dec_bad_challenge(r.sc, r.g, junk, sim.first);
      REQUIRE(bad.has_value());
      CHECK(*bad == c);
    }
  }
}

TEST_CASE("forged proofs for oversized decryption offsets land on the trapdoor bit") {
  const Rig& r = rig();
  ChaChaRng rng(7007);
  const u128 half = (r.ps.p - 1) / 2;
  for (int trial = 0; trial < 25; ++trial) {
    Instance ins = honest_instance(r, rng);
    DecStatement shifted = ins.stmt;
    shifted.ct.c2 = r.sc.mq.add(shifted.ct.c2, half);
    unsigned c = trial & 1;
    DecRep sim = dec_simulate(r.sc, r.g.a, shifted, c, rng);
    REQUIRE(dec_verify(r.sc, r.g.a, shifted, sim));
    auto bad = dec_bad_challenge(r.sc, r.g, shifted, sim.first);
    REQUIRE(bad.has_value());
    CHECK(*bad == c);
  }
}

TEST_CASE("honest commitments trigger no trapdoor verdict") {
  const Rig& r = rig();
  ChaChaRng rng(7008);
  for (int trial = 0; trial < 20; ++trial) {
    Instance ins = honest_instance(r, rng);
    DecState st = dec_commit(r.sc, r.g.a, ins.stmt, rng);
    CHECK_FALSE(dec_bad_challenge(r.sc, r.g, ins.stmt, st.first).has_value());
  }
}

TEST_CASE("the scalar recovery reduces mod p, so p-multiple offsets evade it") {
  // The trapdoor recovers the scalar residue modulo p and centers it, the
  // same arithmetic the decryptor uses to split off the offset.  A claim
  // that shifts the plaintext under a decodable key moves the response
  // identity by a multiple of p, which that reduction absorbs: the
  // detector reports no violation at either challenge.  Such statements
  // are still unprovable — the only response satisfying the shifted
  // identity at the other challenge carries a scalar of magnitude about
  // p/2, far beyond the verifier's norm gate (see the claim-tamper case
  // above) — but rejecting them is the verifier's job, not the trapdoor's.
  // This case pins that division of labour.
  const Rig& r = rig();
  ChaChaRng rng(7009);
  for (int trial = 0; trial < 15; ++trial) {
    Instance ins = honest_instance(r, rng);
    DecStatement wrong = ins.stmt;
    wrong.m = r.sc.mp.add(wrong.m, 1 + rng.below_u128(r.ps.p - 1));
    for (unsigned c : {0u, 1u}) {
      DecRep sim = dec_simulate(r.sc, r.g.a, wrong, c, rng);
      REQUIRE(dec_verify(r.sc, r.g.a, wrong, sim));
      CHECK_FALSE(dec_bad_challenge(r.sc, r.g, wrong, sim.first).has_value());
    }
  }
}

TEST_CASE("challenge-0/1 response pairs surrender the exact witness") {
  const Rig& r = rig();
  ChaChaRng rng(7010);
  for (int trial = 0; trial < 50; ++trial) {
    Instance ins = honest_instance(r, rng);
    DecState st = dec_commit(r.sc, r.g.a, ins.stmt, rng);
    DecRep rep0{st.first, 0, dec_respond_raw(r.sc, st, ins.wit, 0)};
    DecRep rep1{st.first, 1, dec_respond_raw(r.sc, st, ins.wit, 1)};
    if (!dec_verify(r.sc, r.g.a, ins.stmt, rep0) ||
        !dec_verify(r.sc, r.g.a, ins.stmt, rep1)) {
      --trial;  // norm-gate tail miss; draw a fresh commitment
      continue;
    }
    DecExtract ex = dec_extract(r.sc, r.g.a, ins.stmt, rep0, rep1);
    CHECK(ex.s == ins.wit.s);
    CHECK(ex.e == ins.wit.e);
    CHECK(ex.f == ins.wit.f);
    std::vector<i128> cat = ex.s;
    cat.insert(cat.end(), ex.e.begin(), ex.e.end());
    cat.push_back(ex.f);
    CHECK(norm2_le(cat, r.ps.b_dec_star2));
  }
}

TEST_CASE("malformed inputs are refused loudly") {
  const Rig& r = rig();
  ChaChaRng rng(7011);
  Instance ins = honest_instance(r, rng);

  DecStatement shortb = ins.stmt;
  shortb.b.resize(3);
  CHECK_THROWS_AS(dec_commit(r.sc, r.g.a, shortb, rng), LogicError);

  DecStatement bigm = ins.stmt;
  bigm.m = r.ps.p;
  CHECK_THROWS_AS(dec_commit(r.sc, r.g.a, bigm, rng), LogicError);

  DecState st = dec_commit(r.sc, r.g.a, ins.stmt, rng);
  CHECK_THROWS_AS(dec_respond_raw(r.sc, st, ins.wit, 2), LogicError);

  DecWitness swapped{ins.wit.e, ins.wit.s, ins.wit.f};  // v/u lengths crossed
  CHECK_THROWS_AS(dec_respond_raw(r.sc, st, swapped, 1), LogicError);

  DecRep rep0{st.first, 0, dec_respond_raw(r.sc, st, ins.wit, 0)};
  DecRep rep1{st.first, 1, dec_respond_raw(r.sc, st, ins.wit, 1)};
  CHECK_THROWS_AS(dec_extract(r.sc, r.g.a, ins.stmt, rep1, rep0), LogicError);

  DecState other = dec_commit(r.sc, r.g.a, ins.stmt, rng);
  DecRep repx{other.first, 1, dec_respond_raw(r.sc, other, ins.wit, 1)};
  CHECK_THROWS_AS(dec_extract(r.sc, r.g.a, ins.stmt, rep0, repx), LogicError);
}
