#pragma once

// Non-interactive layer over the three coin-flip arguments: CRS handling,
// deterministic challenge derivation, bundled parallel repetition, and the
// proof wire format.
//
// A Crs fixes the public matrix A, the parameter ledger, a language tag
// (key posting / dealing / opening), and a mode.  Real mode samples A
// uniformly and carries no secrets; trapdoored mode adopts a decoding
// matrix so the bad-challenge analyzers can run.  Proofs created under one
// mode verify under the other (the two matrix distributions are
// statistically close), which the tests exercise directly.
//
// Challenges come from SHAKE256 over a fixed framing:
//     "lpvss-chal-v1" || lang byte || crs fingerprint ||
//     u64-be length || statement bytes || u64-be length || first-message
//     bytes
// squeezed to ceil(lambda_rep / 8) bytes; challenge bit j is bit (j mod 8)
// of byte floor(j / 8).  The fingerprint is SHAKE256-32 of
// "lpvss-crs-v1" || the twenty ledger fields (16-byte little-endian, fixed
// order) || A row-major (16-byte little-endian residues).  This keyed-hash
// oracle is a deliberate, loudly-documented stand-in: it is NOT a
// correlation-intractable compiler, and the non-interactive soundness here
// is heuristic.  The coin-flip layer underneath — including the trapdoor
// analyzers, which the tests drive directly — does not depend on it.
//
// Proving runs all lambda_rep repetitions through one shared rejection
// filter: the per-repetition responses are deterministic given the
// commitments and derived challenges, and the concatenation of all
// repetitions' noise-masked parts is filtered as a single vector (the noise
// widths are sized for exactly this bundle).  A filter rejection restarts
// the whole loop — fresh commitments, fresh challenges — expected O(1)
// times, hard-capped at 1024.
//
// Wire format (byte-exact):
//     0x01 | lang byte | lambda_rep as u16 big-endian |
//     per repetition: u32-be length, first-message bytes,
//                     u32-be length, response bytes
// Residues ride as 16-byte little-endian (must be below their modulus,
// share vector entries 8-byte below p); response integers as 8-byte
// little-endian two's complement.  Challenge bits are never stored — the
// verifier re-derives them, which is what binds a proof to its statement.

#include <array>
#include <optional>
#include <vector>

#include "lpvss/gadget.hpp"
#include "lpvss/sigma.hpp"

namespace lpvss {

enum class Lang : u8 { key = 0, share = 1, dec = 2 };
enum class CrsMode : u8 { real = 0, trapdoored = 1 };

struct Crs {
  CrsMode mode = CrsMode::real;
  Lang lang = Lang::key;
  ParamSet ps;
  Mat a;                     // v x u, the matrix every statement lives over
  std::optional<Gadget> td;  // trapdoored mode: decoder with td->a == a
  std::array<u8, 32> fp{};   // fingerprint of (ledger, A)
};

std::array<u8, 32> crs_fingerprint(const ParamSet& ps, const Mat& a);

// Wrap an existing matrix / decoder (the dealer-facing path re-uses one
// matrix across all three languages).
Crs crs_from_matrix(const ParamSet& ps, Lang lang, Mat a);
Crs crs_from_gadget(const ParamSet& ps, Lang lang, Gadget g);

// A copy of a sharing-language CRS with the party count replaced by
// t + 1 <= n_prime <= ps.n (LogicError otherwise).  The count enters the
// fingerprint, so challenges derived under different counts never collide.
// Per-party bounds and filter constants are count-independent, which keeps
// the restricted system exactly as complete and sound as the original; the
// full ledger validation is keyed to the original count and is not re-run.
Crs crs_restrict_count(const Crs& base, u32 n_prime);

// Sample a fresh CRS: uniform matrix in real mode, decoding matrix in
// trapdoored mode.
Crs crs_gen(const ParamSet& ps, Lang lang, CrsMode mode, ChaChaRng& rng);

// Challenge bits (each 0 or 1) for the given canonical byte strings.
std::vector<unsigned> derive_challenges(const Crs& crs,
                                        const std::vector<u8>& statement_bytes,
                                        const std::vector<u8>& firsts_bytes,
                                        u32 lambda_rep);

// Canonical statement serializations: length-prefixed fields in declaration
// order.  These are both the hash preimages and the CLI-visible forms.
std::vector<u8> key_statement_bytes(const ParamSet& ps,
                                    const std::vector<u128>& b);
std::vector<u8> share_statement_bytes(const ParamSet& ps,
                                      const ShareStatement& stmt);
std::vector<u8> dec_statement_bytes(const ParamSet& ps,
                                    const DecStatement& stmt);

struct ProveStats {
  u32 restarts = 0;  // filter-rejected rounds before the released one
};

struct KeyProof {
  std::vector<KeyRep> reps;
};
struct ShareProof {
  std::vector<ShareRep> reps;
};
struct DecProof {
  std::vector<DecRep> reps;
};

// Provers check the witness relation first and refuse (PreconditionError)
// before emitting anything when it fails; they throw SamplingError if the
// restart cap is ever hit.  Verifiers never throw on proof content: any
// malformed or mismatched proof is simply false.

KeyProof nizk_key_prove(const SigmaContext& sc, const Crs& crs,
                        const std::vector<u128>& b, const std::vector<i128>& s,
                        const std::vector<i128>& e, ChaChaRng& rng,
                        ProveStats* stats = nullptr);
bool nizk_key_verify(const SigmaContext& sc, const Crs& crs,
                     const std::vector<u128>& b, const KeyProof& proof);

ShareProof nizk_share_prove(const SigmaContext& sc, const Crs& crs,
                            const ShareStatement& stmt,
                            const ShareWitness& wit, ChaChaRng& rng,
                            ProveStats* stats = nullptr);
bool nizk_share_verify(const SigmaContext& sc, const Crs& crs,
                       const ShareStatement& stmt, const ShareProof& proof);

DecProof nizk_dec_prove(const SigmaContext& sc, const Crs& crs,
                        const DecStatement& stmt, const DecWitness& wit,
                        ChaChaRng& rng, ProveStats* stats = nullptr);
bool nizk_dec_verify(const SigmaContext& sc, const Crs& crs,
                     const DecStatement& stmt, const DecProof& proof);

// Wire codecs.  Encoding a structurally invalid proof throws LogicError;
// decoding never throws — malformed bytes yield nullopt.
std::vector<u8> key_proof_encode(const Crs& crs, const KeyProof& proof);
std::optional<KeyProof> key_proof_decode(const Crs& crs,
                                         const std::vector<u8>& bytes);
std::vector<u8> share_proof_encode(const Crs& crs, const ShareProof& proof);
std::optional<ShareProof> share_proof_decode(const Crs& crs,
                                             const std::vector<u8>& bytes);
std::vector<u8> dec_proof_encode(const Crs& crs, const DecProof& proof);
std::optional<DecProof> dec_proof_decode(const Crs& crs,
                                         const std::vector<u8>& bytes);

// Bytes-level verification: decode + verify, false on malformed input.
bool nizk_key_verify_bytes(const SigmaContext& sc, const Crs& crs,
                           const std::vector<u128>& b,
                           const std::vector<u8>& bytes);
bool nizk_share_verify_bytes(const SigmaContext& sc, const Crs& crs,
                             const ShareStatement& stmt,
                             const std::vector<u8>& bytes);
bool nizk_dec_verify_bytes(const SigmaContext& sc, const Crs& crs,
                           const DecStatement& stmt,
                           const std::vector<u8>& bytes);

}  // namespace lpvss
