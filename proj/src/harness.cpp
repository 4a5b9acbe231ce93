#include "lpvss/harness.hpp"

#include <algorithm>
#include <sstream>

#include "lpvss/shamir.hpp"

namespace lpvss {

namespace {

// Fixed fork tags; every sampling site hangs off the seed by one of these,
// so a message's bytes depend only on its phase and slot.
constexpr u64 kTagSecret = 1;
constexpr u64 kTagDealer = 2;
constexpr u64 kTagKeyBase = 0x100;     // + original index
constexpr u64 kTagRevealBase = 0x10000;  // + re-enumerated index

std::vector<u128> uniform_row(const PvssPublicParams& pp, ChaChaRng& rng) {
  std::vector<u128> row(pp.ps.u);
  for (auto& x : row) x = rng.below_u128(pp.ps.q);
  return row;
}

// Challenge-guessing forgeries: simulate every repetition at a guessed bit
// and hope the derived challenges agree.  The strongest generic attack
// available without a witness; succeeds with probability 2^-lambda_rep.
std::vector<u8> forge_key_proof(const PvssPublicParams& pp,
                                const std::vector<u128>& pk, ChaChaRng& rng) {
  KeyProof proof;
  proof.reps.reserve(pp.ps.lambda_rep);
  for (u32 j = 0; j < pp.ps.lambda_rep; ++j) {
    unsigned guess = unsigned(rng.below(2));
    proof.reps.push_back(key_simulate(pp.sigma, pp.a, pk, guess, rng));
  }
  return key_proof_encode(pp.crs_key, proof);
}

std::vector<u8> forge_share_proof(const PvssPublicParams& pp, u32 n_prime,
                                  const ShareStatement& stmt, ChaChaRng& rng) {
  const SigmaContext& sc = pp.share_sigma(n_prime);
  ShareProof proof;
  proof.reps.reserve(pp.ps.lambda_rep);
  for (u32 j = 0; j < pp.ps.lambda_rep; ++j) {
    unsigned guess = unsigned(rng.below(2));
    proof.reps.push_back(share_simulate(sc, pp.a, stmt, guess, rng));
  }
  return share_proof_encode(pp.share_crs(n_prime), proof);
}

std::vector<u8> forge_dec_proof(const PvssPublicParams& pp,
                                const DecStatement& stmt, ChaChaRng& rng) {
  DecProof proof;
  proof.reps.reserve(pp.ps.lambda_rep);
  for (u32 j = 0; j < pp.ps.lambda_rep; ++j) {
    unsigned guess = unsigned(rng.below(2));
    proof.reps.push_back(dec_simulate(pp.sigma, pp.a, stmt, guess, rng));
  }
  return dec_proof_encode(pp.crs_dec, proof);
}

u128 wrong_share(const Modulus& mp, u128 truth, ChaChaRng& rng) {
  return mp.add(truth, 1 + rng.below_u128(mp.q - 1));  // uniform != truth
}

// The scenario's a-priori expectation of every verdict and the output.
bool outcome_expected(const Scenario& sc, const PvssTranscript& tr,
                      u128 secret) {
  auto script = [&](u32 orig) -> const Misbehavior* {
    auto it = sc.corrupted.find(orig);
    return it == sc.corrupted.end() ? nullptr : &it->second;
  };
  for (u32 i = 1; i <= tr.n; ++i) {
    const Misbehavior* m = script(i);
    bool keep = !(m && *m == Misbehavior::bad_key);
    if (tr.keys[i - 1].verdict != keep) return false;
  }
  if (tr.n_prime <= tr.t) return false;  // standard scenarios never drain it
  if (sc.dealer_off_code) {
    return !tr.share_verdict && tr.reveals.empty() && tr.recon_set.empty() &&
           !tr.output.has_value();
  }
  if (!tr.share_verdict) return false;
  std::size_t at = 0;
  std::vector<u32> honest;
  for (u32 j = 1; j <= tr.n_prime; ++j) {
    const u32 orig = tr.qualified[j - 1];
    const Misbehavior* m = script(orig);
    if (m && (*m == Misbehavior::silent || *m == Misbehavior::bad_key)) {
      continue;  // no post expected from this slot
    }
    if (at >= tr.reveals.size() || tr.reveals[at].index != j) return false;
    const bool want = m == nullptr;
    if (tr.reveals[at].verdict != want) return false;
    if (want) honest.push_back(j);
    ++at;
  }
  if (at != tr.reveals.size()) return false;
  if (tr.recon_set != honest) return false;
  return tr.output.has_value() && *tr.output == secret;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "honest",        "bad-key", "off-code-dealer", "wrong-reveal",
      "garbage-proof", "silent",  "mixed-reveal"};
  return names;
}

Scenario scenario_by_name(const std::string& name, const ParamSet& ps) {
  Scenario sc;
  sc.name = name;
  // Corrupting c keys shrinks the qualified set to n - c, which must stay
  // above t; reveal-phase scripts keep all n qualified and may use all t.
  const u32 key_cap = std::min(ps.t, ps.n - ps.t - 1);
  if (name == "honest") return sc;
  if (name == "bad-key") {
    if (key_cap < 1)
      throw ConfigError("scenario: no room to disqualify a key");
    for (u32 i = 1; i <= key_cap; ++i)
      sc.corrupted.emplace(i, Misbehavior::bad_key);
    return sc;
  }
  if (name == "off-code-dealer") {
    sc.dealer_off_code = true;
    return sc;
  }
  auto fill = [&](Misbehavior m) {
    for (u32 i = 1; i <= ps.t; ++i) sc.corrupted.emplace(i, m);
  };
  if (name == "wrong-reveal") {
    fill(Misbehavior::wrong_reveal);
    return sc;
  }
  if (name == "garbage-proof") {
    fill(Misbehavior::garbage_proof);
    return sc;
  }
  if (name == "silent") {
    fill(Misbehavior::silent);
    return sc;
  }
  if (name == "mixed-reveal") {
    const Misbehavior cycle[3] = {Misbehavior::wrong_reveal,
                                  Misbehavior::garbage_proof,
                                  Misbehavior::silent};
    for (u32 i = 1; i <= ps.t; ++i)
      sc.corrupted.emplace(i, cycle[(i - 1) % 3]);
    return sc;
  }
  throw ConfigError("scenario: unknown name: " + name);
}

RunOutcome run_scenario(const PvssPublicParams& pp, const Scenario& sc,
                        u64 seed) {
  const ParamSet& ps = pp.ps;
  if (sc.corrupted.size() > ps.t)
    throw ConfigError("scenario: more corrupted parties than the threshold");
  for (const auto& [idx, mis] : sc.corrupted) {
    (void)mis;
    if (idx < 1 || idx > ps.n)
      throw ConfigError("scenario: corrupted index outside 1..n");
  }

  ChaChaRng root(seed);
  RunOutcome out;
  PvssTranscript& tr = out.tr;
  tr.scenario = sc.name;
  tr.n = ps.n;
  tr.t = ps.t;
  tr.a = pp.a;
  out.secret = root.fork(kTagSecret).below_u128(ps.p);

  auto script = [&](u32 orig) -> const Misbehavior* {
    auto it = sc.corrupted.find(orig);
    return it == sc.corrupted.end() ? nullptr : &it->second;
  };

  // --- key phase -------------------------------------------------------
  std::map<u32, KeyPair> sks;  // honest parties' local key material
  for (u32 i = 1; i <= ps.n; ++i) {
    ChaChaRng rng = root.fork(kTagKeyBase + i);
    KeyRecord rec;
    const Misbehavior* m = script(i);
    if (m && *m == Misbehavior::bad_key) {
      rec.pk = uniform_row(pp, rng);
      rec.proof = forge_key_proof(pp, rec.pk, rng);
    } else {
      PvssKeygenResult kg = pvss_keygen(pp, rng);
      rec.pk = kg.kp.b;
      rec.proof = std::move(kg.proof);
      sks.emplace(i, std::move(kg.kp));
    }
    rec.verdict = pvss_keyver(pp, rec.pk, rec.proof);
    if (rec.verdict) tr.qualified.push_back(i);
    tr.keys.push_back(std::move(rec));
  }
  tr.n_prime = u32(tr.qualified.size());

  // --- sharing phase ---------------------------------------------------
  if (tr.n_prime > ps.t) {
    ChaChaRng rng = root.fork(kTagDealer);
    std::vector<std::vector<u128>> pks;
    pks.reserve(tr.n_prime);
    for (u32 orig : tr.qualified) pks.push_back(tr.keys[orig - 1].pk);
    if (sc.dealer_off_code) {
      std::vector<u128> shares =
          shamir_share(pp.sigma.mp, tr.n_prime, ps.t, out.secret, rng);
      shares[0] = pp.sigma.mp.add(shares[0], 1);  // off the dual code
      for (u32 j = 0; j < tr.n_prime; ++j)
        tr.cts.push_back(pke_enc(pp.pke, pp.a, pks[j], shares[j], rng).first);
      ShareStatement stmt{pks, tr.cts};
      tr.share_proof = forge_share_proof(pp, tr.n_prime, stmt, rng);
    } else {
      PvssSharing sharing =
          pvss_share(pp, pks, out.secret, tr.n_prime, ps.t, rng);
      tr.cts = std::move(sharing.cts);
      tr.share_proof = std::move(sharing.proof);
    }
    tr.share_verdict =
        pvss_share_ver(pp, pks, tr.n_prime, ps.t, tr.cts, tr.share_proof);

    // --- reveal phase --------------------------------------------------
    if (tr.share_verdict) {
      std::vector<u128> accepted_shares;
      for (u32 j = 1; j <= tr.n_prime; ++j) {
        const u32 orig = tr.qualified[j - 1];
        const Misbehavior* m = script(orig);
        if (m && *m == Misbehavior::silent) continue;
        if (m && *m == Misbehavior::bad_key) continue;  // no key to open with
        ChaChaRng rng = root.fork(kTagRevealBase + j);
        const KeyPair& kp = sks.at(orig);
        RevealRecord rec;
        rec.index = j;
        if (m && *m == Misbehavior::wrong_reveal) {
          DecResult truth = pke_dec(pp.pke, tr.cts[j - 1], kp.s);
          rec.share = wrong_share(pp.sigma.mp, truth.m, rng);
          DecStatement stmt{kp.b, tr.cts[j - 1], rec.share};
          rec.proof = forge_dec_proof(pp, stmt, rng);
        } else if (m && *m == Misbehavior::garbage_proof) {
          DecResult truth = pke_dec(pp.pke, tr.cts[j - 1], kp.s);
          rec.share = wrong_share(pp.sigma.mp, truth.m, rng);
          rec.proof.resize(96);
          rng.fill_bytes(rec.proof.data(), rec.proof.size());
        } else {
          PvssReveal reveal = pvss_dec(pp, kp, tr.cts[j - 1], rng);
          rec.share = reveal.share;
          rec.proof = std::move(reveal.proof);
        }
        rec.verdict =
            pvss_dec_ver(pp, kp.b, tr.cts[j - 1], rec.share, rec.proof);
        if (rec.verdict) {
          tr.recon_set.push_back(j);
          accepted_shares.push_back(rec.share);
        }
        tr.reveals.push_back(std::move(rec));
      }
      tr.output = pvss_combine(pp, tr.recon_set, accepted_shares);
    }
  }

  out.expected = outcome_expected(sc, tr, out.secret);
  std::size_t accepted = tr.recon_set.size();
  std::ostringstream line;
  line << "scenario=" << (sc.name.empty() ? "-" : sc.name) << " seed=" << seed
       << " n=" << tr.n << " nprime=" << tr.n_prime
       << " share_verdict=" << (tr.share_verdict ? 1 : 0)
       << " reveals=" << tr.reveals.size() << " accepted=" << accepted
       << " recon="
       << (tr.output.has_value() ? to_string_u128(*tr.output) : "none")
       << " expected=" << (out.expected ? "ok" : "mismatch");
  out.summary = line.str();
  return out;
}

}  // namespace lpvss
