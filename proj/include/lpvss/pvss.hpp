#pragma once

// The protocol layer: key registration, verifiable sharing, verifiable
// reveal, and reconstruction, all over one public matrix A that serves the
// encryption scheme and all three argument systems.
//
// Flow: every participant posts (pk, key proof); the qualified set is the
// posts whose proofs verify, re-enumerated 1..n'.  The dealer Shamir-shares
// a secret mod p over the qualified set, encrypts share j under qualified
// key j, and proves the whole batch well-formed (on-code plaintexts under
// exactly the posted keys).  Each qualified participant later reveals their
// decrypted share with a proof tying it to their own posted key, and any
// t+1 accepted reveals reconstruct the secret.
//
// Everything a verifier touches is public: proofs travel as wire bytes, and
// the whole exchange serializes to a line-oriented transcript ("key = value"
// with hex payloads) that re-verifies offline from the parameter ledger
// alone -- no secret key, share witness, or sampler state is ever written.
//
// Qualified counts below the ledger's n reuse the same matrix and bounds
// with only the code length changed; the contexts and reference strings for
// those counts are derived on first use and cached (single-threaded
// discipline: the caches are not locked).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpvss/acps.hpp"
#include "lpvss/nizk.hpp"

namespace lpvss {

// One matrix, one parameter ledger, three reference strings, and the heavy
// sampler state, built once and shared by every operation below.
struct PvssPublicParams {
  ParamSet ps;
  PkeContext pke;
  SigmaContext sigma;  // party count ps.n
  Mat a;               // v x u, entries mod q
  Crs crs_key, crs_share, crs_dec;

  // Construction validates the matrix shape only; entries are trusted to be
  // reduced (the transcript parser enforces the range on untrusted input).
  PvssPublicParams(const ParamSet& params, Mat matrix);

  // The sharing-language context / reference string for a qualified count
  // n' <= ps.n: the cached originals when n' == ps.n, otherwise a cached
  // copy with the code length (and its parity matrix) restricted to n'.
  // The per-party norm gates and filter constants do not depend on the
  // count, so the restriction stays complete and sound.
  const SigmaContext& share_sigma(u32 n_prime) const;
  const Crs& share_crs(u32 n_prime) const;

 private:
  mutable std::map<u32, std::unique_ptr<const SigmaContext>> sigma_cache_;
  mutable std::map<u32, std::unique_ptr<const Crs>> crs_cache_;
};

// Derive the ledger for the request and sample a fresh uniform matrix.
PvssPublicParams pvss_setup(const ParamRequest& req, ChaChaRng& rng);

// --------------------------------------------------------------- phases ---

// Sample a key pair and prove knowledge of its short opening.  The proof is
// wire bytes, ready for a transcript.
struct PvssKeygenResult {
  KeyPair kp;              // kp.b is the public row; kp.s, kp.e stay local
  std::vector<u8> proof;
};
PvssKeygenResult pvss_keygen(const PvssPublicParams& pp, ChaChaRng& rng);

// Public check of a posted (pk, proof); false on any malformed input.
bool pvss_keyver(const PvssPublicParams& pp, const std::vector<u128>& pk,
                 const std::vector<u8>& proof);

// Shamir-share `secret` over the n' qualified keys (in their re-enumerated
// order) and prove the batch.  Requires n_prime >= t + 1, n_prime <= ps.n,
// and t == ps.t (the ledger is derived for one threshold); ConfigError
// otherwise.  Share witnesses and plaintext shares are zeroized before
// returning -- the dealer keeps nothing reusable.
struct PvssSharing {
  std::vector<Ciphertext> cts;  // ct j encrypts share j under qualified key j
  std::vector<u8> proof;
};
PvssSharing pvss_share(const PvssPublicParams& pp,
                       const std::vector<std::vector<u128>>& qualified_pks,
                       u128 secret, u32 n_prime, u32 t, ChaChaRng& rng);

// Public check of a posted sharing; false on malformed or mismatched input.
bool pvss_share_ver(const PvssPublicParams& pp,
                    const std::vector<std::vector<u128>>& qualified_pks,
                    u32 n_prime, u32 t, const std::vector<Ciphertext>& cts,
                    const std::vector<u8>& proof);

// Decrypt one's own ciphertext and prove the revealed share is what the
// posted key decrypts, using only key material and the decryption offset.
struct PvssReveal {
  u128 share = 0;          // residue mod p
  std::vector<u8> proof;
};
PvssReveal pvss_dec(const PvssPublicParams& pp, const KeyPair& kp,
                    const Ciphertext& ct, ChaChaRng& rng);

// Public check of a posted reveal; false on any malformed input.
bool pvss_dec_ver(const PvssPublicParams& pp, const std::vector<u128>& pk,
                  const Ciphertext& ct, u128 share,
                  const std::vector<u8>& proof);

// Lagrange reconstruction from accepted reveals at the 1-based re-enumerated
// points; refuses (nullopt) unless |points| >= t + 1 with distinct points in
// 1..n'.  Shares must be reduced mod p.
std::optional<u128> pvss_combine(const PvssPublicParams& pp,
                                 const std::vector<u32>& points,
                                 const std::vector<u128>& shares);

// ----------------------------------------------------------- transcript ---

// The append-only public record of one protocol run: everything any phase
// broadcast, each with the verdict the run assigned, plus the index
// bijection between original posters and the re-enumerated qualified set.
// Contains no secrets by construction.
struct KeyRecord {
  std::vector<u128> pk;    // length u
  std::vector<u8> proof;
  bool verdict = false;
};
struct RevealRecord {
  u32 index = 0;           // re-enumerated 1..n'
  u128 share = 0;          // claimed share mod p
  std::vector<u8> proof;
  bool verdict = false;
};
struct PvssTranscript {
  std::string scenario;        // label only; grammar-free
  u32 n = 0, t = 0, n_prime = 0;
  Mat a;                       // the public matrix
  std::vector<KeyRecord> keys;           // size n, posting order
  std::vector<u32> qualified;            // qualified[j-1] = original index of j
  std::vector<Ciphertext> cts;           // size n' (empty when n' <= t)
  std::vector<u8> share_proof;
  bool share_verdict = false;
  std::vector<RevealRecord> reveals;     // ascending index; silent = absent
  std::vector<u32> recon_set;            // ascending indices with verdict 1
  std::optional<u128> output;            // reconstructed secret, if any
};

// Line-oriented serialization: "format = lpvss-transcript-v1" first, then
// fixed-order "path = value" lines; residues in the fixed-width hex of the
// ledger's q, proofs as plain hex, counts and shares in decimal.  The
// writer is canonical (byte-identical for equal contents); the parser is
// strict (ParseError on unknown keys, duplicates, missing fields, range or
// framing violations, or n/t differing from the ledger).
std::string transcript_to_text(const ParamSet& ps, const PvssTranscript& tr);
PvssTranscript transcript_from_text(const ParamSet& ps,
                                    const std::string& text);

// Recompute every verdict, the qualified map, the reconstruction set, and
// the output from public data alone, and compare with the record.  `ok`
// means the transcript is exactly self-consistent; `detail` names the first
// divergence otherwise.  Never throws on content.
struct VerifyReport {
  bool ok = false;
  std::string detail;
};
VerifyReport verify_transcript(const PvssPublicParams& pp,
                               const PvssTranscript& tr);

}  // namespace lpvss
