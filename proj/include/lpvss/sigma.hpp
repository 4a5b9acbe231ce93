#pragma once

// Three interactive arguments over the encryption layer, each with a binary
// challenge and the structure commit / respond / verify:
//
//   key:   knowledge of a short (s, e) with b = s^T A + e           (keys)
//   share: the n posted ciphertexts encrypt, under the n posted keys, a
//          vector of evaluations of one polynomial of degree <= t  (dealer)
//   dec:   a claimed plaintext m is what b's key decrypts from (c1, c2),
//          witnessed by (s, e, f) alone                         (reveals)
//
// Responses are Gaussian-masked witness combinations released through the
// rejection filter, so transcripts carry no witness information; every
// protocol also provides
//
//   *_simulate:      challenge-first transcripts from the statement alone,
//                    distributed as the real prover's released transcripts;
//   *_bad_challenge: given the inversion trapdoor for A and a statement
//                    outside the sound language, names the one challenge a
//                    cheating prover could still answer (none if the
//                    statement admits no answerable forgery either way);
//   *_extract:       from two accepting transcripts with the same first
//                    message and both challenges, a witness in the relaxed
//                    (norm-doubled) language.
//
// The deterministic *_respond_raw / *_shift / *_gauss split exists so a
// caller can bundle several repetitions into one filter decision: compute
// raw responses for all repetitions, concatenate the Gaussian parts and
// the shifts, and run reject_filter once over the concatenation.  The
// single-repetition *_respond wrappers do exactly that for one repetition.

#include <optional>
#include <vector>

#include "lpvss/acps.hpp"
#include "lpvss/gadget.hpp"
#include "lpvss/params.hpp"
#include "lpvss/reject.hpp"
#include "lpvss/sampler.hpp"
#include "lpvss/shamir.hpp"

namespace lpvss {

// Shared per-parameter-set state: moduli, the three cached Gaussian widths
// (the encryption width builds a large table once; construct contexts
// sparingly and reuse them), and the sharing-code parity matrix.
struct SigmaContext {
  ParamSet ps;
  Modulus mq;  // mod q
  Modulus mp;  // mod p
  DiscreteGaussian w_key, w_enc, w_dec;
  Mat parity;  // n x (n-t-1) over p

  explicit SigmaContext(const ParamSet& params);
};

// ---------------------------------------------------------------- key ----

struct KeyFirst {
  std::vector<u128> d;  // length u: r^T A + f^T
};
struct KeyResponse {
  std::vector<i128> z;  // length v: r + c s
  std::vector<i128> t;  // length u: f + c e
};
struct KeyRep {
  KeyFirst first;
  unsigned c = 0;
  KeyResponse resp;
};
struct KeyState {
  std::vector<i128> r, f;
  KeyFirst first;
};

KeyState key_commit(const SigmaContext& sc, const Mat& a, ChaChaRng& rng);
KeyResponse key_respond_raw(const SigmaContext& sc, const KeyState& st,
                            const std::vector<i128>& s,
                            const std::vector<i128>& e, unsigned c);
std::vector<i128> key_shift(const std::vector<i128>& s,
                            const std::vector<i128>& e, unsigned c);
std::vector<i128> key_gauss(const KeyResponse& resp);
std::optional<KeyResponse> key_respond(const SigmaContext& sc,
                                       const KeyState& st,
                                       const std::vector<i128>& s,
                                       const std::vector<i128>& e, unsigned c,
                                       ChaChaRng& rng);
bool key_verify(const SigmaContext& sc, const Mat& a,
                const std::vector<u128>& b, const KeyRep& rep);
KeyRep key_simulate(const SigmaContext& sc, const Mat& a,
                    const std::vector<u128>& b, unsigned c, ChaChaRng& rng);
std::optional<unsigned> key_bad_challenge(const SigmaContext& sc,
                                          const Gadget& g,
                                          const std::vector<u128>& b,
                                          const KeyFirst& first);
struct KeyExtract {
  std::vector<i128> s, e;
};
KeyExtract key_extract(const SigmaContext& sc, const Mat& a,
                       const std::vector<u128>& b, const KeyRep& rep0,
                       const KeyRep& rep1);

// -------------------------------------------------------------- share ----

struct ShareStatement {
  std::vector<std::vector<u128>> pk;  // n public rows b_i, each length u
  std::vector<Ciphertext> ct;         // n ciphertexts
};
struct ShareWitness {
  std::vector<EncWitness> enc;  // per-party encryption randomness
  std::vector<u128> m;          // the shares mod p (a code vector)
};
struct ShareFirst {
  std::vector<std::vector<u128>> a1;  // n x v: A v_i
  std::vector<u128> a2;               // n: b_i v_i + k_i + p u_i
};
struct ShareResponse {
  std::vector<std::vector<i128>> z;  // n x u: v_i + c r_i
  std::vector<i128> h;               // n: k_i + c e_i
  std::vector<u128> t;               // n mod p: u_i + c m_i
};
struct ShareRep {
  ShareFirst first;
  unsigned c = 0;
  ShareResponse resp;
};
struct ShareState {
  std::vector<std::vector<i128>> v;  // n x u Gaussian masks
  std::vector<i128> k;               // n scalar masks
  std::vector<u128> mask;            // n: code-vector mask mod p
  ShareFirst first;
};

ShareState share_commit(const SigmaContext& sc, const Mat& a,
                        const ShareStatement& stmt, ChaChaRng& rng);
ShareResponse share_respond_raw(const SigmaContext& sc, const ShareState& st,
                                const ShareWitness& wit, unsigned c);
std::vector<i128> share_shift(const ShareWitness& wit, unsigned c);
std::vector<i128> share_gauss(const ShareResponse& resp);
std::optional<ShareResponse> share_respond(const SigmaContext& sc,
                                           const ShareState& st,
                                           const ShareWitness& wit, unsigned c,
                                           ChaChaRng& rng);
bool share_verify(const SigmaContext& sc, const Mat& a,
                  const ShareStatement& stmt, const ShareRep& rep);
ShareRep share_simulate(const SigmaContext& sc, const Mat& a,
                        const ShareStatement& stmt, unsigned c,
                        ChaChaRng& rng);
// Requires every posted key to lie in the sound key language (throws
// PreconditionError otherwise -- the composed system guarantees it by
// checking key proofs first).
std::optional<unsigned> share_bad_challenge(const SigmaContext& sc,
                                            const Gadget& g,
                                            const ShareStatement& stmt,
                                            const ShareFirst& first);
struct ShareExtract {
  std::vector<std::vector<i128>> r;  // per-party randomness differences
  std::vector<i128> f;               // per-party decryption offsets
  std::vector<u128> m;               // extracted share vector mod p, on-code
};
ShareExtract share_extract(const SigmaContext& sc, const Gadget& g,
                           const ShareStatement& stmt, const ShareRep& rep0,
                           const ShareRep& rep1);

// ---------------------------------------------------------------- dec ----

struct DecStatement {
  std::vector<u128> b;  // the revealer's public row
  Ciphertext ct;        // the ciphertext being opened
  u128 m = 0;           // claimed plaintext
};
struct DecWitness {
  std::vector<i128> s, e;  // key material (no encryption randomness)
  i128 f = 0;              // decryption offset: c2 - s^T c1 = p m + f
};
struct DecFirst {
  std::vector<u128> d;  // length u: r^T A + k^T
  u128 h = 0;           // r^T c1 + k_sc
};
struct DecResponse {
  std::vector<i128> z;  // length v: r + c s
  std::vector<i128> t;  // length u: k + c e
  i128 t_sc = 0;        // k_sc + c f
};
struct DecRep {
  DecFirst first;
  unsigned c = 0;
  DecResponse resp;
};
struct DecState {
  std::vector<i128> r, kv;
  i128 ks = 0;
  DecFirst first;
};

DecState dec_commit(const SigmaContext& sc, const Mat& a,
                    const DecStatement& stmt, ChaChaRng& rng);
DecResponse dec_respond_raw(const SigmaContext& sc, const DecState& st,
                            const DecWitness& wit, unsigned c);
std::vector<i128> dec_shift(const DecWitness& wit, unsigned c);
std::vector<i128> dec_gauss(const DecResponse& resp);
std::optional<DecResponse> dec_respond(const SigmaContext& sc,
                                       const DecState& st,
                                       const DecWitness& wit, unsigned c,
                                       ChaChaRng& rng);
bool dec_verify(const SigmaContext& sc, const Mat& a, const DecStatement& stmt,
                const DecRep& rep);
DecRep dec_simulate(const SigmaContext& sc, const Mat& a,
                    const DecStatement& stmt, unsigned c, ChaChaRng& rng);
std::optional<unsigned> dec_bad_challenge(const SigmaContext& sc,
                                          const Gadget& g,
                                          const DecStatement& stmt,
                                          const DecFirst& first);
struct DecExtract {
  std::vector<i128> s, e;
  i128 f = 0;
};
DecExtract dec_extract(const SigmaContext& sc, const Mat& a,
                       const DecStatement& stmt, const DecRep& rep0,
                       const DecRep& rep1);

// ------------------------------------------------------------- shared ----

// Exact sum-of-squares comparison with 256-bit accumulation and early
// exit; entries of any magnitude.
bool norm2_le(const std::vector<i128>& x, u128 bound2);

}  // namespace lpvss
