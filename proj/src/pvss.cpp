#include "lpvss/pvss.hpp"

#include <algorithm>
#include <sstream>

#include "lpvss/shamir.hpp"

namespace lpvss {

namespace {

// Best-effort cleanup of secret-bearing buffers before they go out of
// scope.  Plain stores, not guaranteed against an optimizing copy made
// earlier; the aim is that no routine *keeps* witness material reachable.
void wipe(std::vector<i128>& v) { std::fill(v.begin(), v.end(), i128(0)); }
void wipe(std::vector<u128>& v) { std::fill(v.begin(), v.end(), u128(0)); }

bool reduced_row(const std::vector<u128>& row, std::size_t len, u128 q) {
  if (row.size() != len) return false;
  for (u128 x : row)
    if (x >= q) return false;
  return true;
}

}  // namespace

PvssPublicParams::PvssPublicParams(const ParamSet& params, Mat matrix)
    : ps(params), pke(params), sigma(params), a(std::move(matrix)) {
  require(a.rows == ps.v && a.cols == ps.u,
          "public params: matrix shape mismatch");
  crs_key = crs_from_matrix(ps, Lang::key, a);
  crs_share = crs_from_matrix(ps, Lang::share, a);
  crs_dec = crs_from_matrix(ps, Lang::dec, a);
}

const SigmaContext& PvssPublicParams::share_sigma(u32 n_prime) const {
  require(n_prime >= ps.t + 1 && n_prime <= ps.n,
          "public params: qualified count out of range");
  if (n_prime == ps.n) return sigma;
  auto it = sigma_cache_.find(n_prime);
  if (it == sigma_cache_.end()) {
    // Copying reuses the built sampler tables; only the code length and its
    // parity matrix change.
    auto ctx = std::make_unique<SigmaContext>(sigma);
    ctx->ps.n = n_prime;
    ctx->parity = parity_matrix(ctx->mp, n_prime, ctx->ps.t);
    it = sigma_cache_.emplace(n_prime, std::move(ctx)).first;
  }
  return *it->second;
}

const Crs& PvssPublicParams::share_crs(u32 n_prime) const {
  require(n_prime >= ps.t + 1 && n_prime <= ps.n,
          "public params: qualified count out of range");
  if (n_prime == ps.n) return crs_share;
  auto it = crs_cache_.find(n_prime);
  if (it == crs_cache_.end())
    it = crs_cache_
             .emplace(n_prime, std::make_unique<const Crs>(
                                   crs_restrict_count(crs_share, n_prime)))
             .first;
  return *it->second;
}

PvssPublicParams pvss_setup(const ParamRequest& req, ChaChaRng& rng) {
  ParamSet ps = derive_params(req);
  PkeContext sampler(ps);  // small tables; the heavy context lives in the result
  Mat a = pke_uniform_matrix(sampler, rng);
  return PvssPublicParams(ps, std::move(a));
}

// --------------------------------------------------------------- phases ---

PvssKeygenResult pvss_keygen(const PvssPublicParams& pp, ChaChaRng& rng) {
  PvssKeygenResult out;
  out.kp = pke_keygen(pp.pke, pp.a, rng);
  KeyProof proof =
      nizk_key_prove(pp.sigma, pp.crs_key, out.kp.b, out.kp.s, out.kp.e, rng);
  out.proof = key_proof_encode(pp.crs_key, proof);
  return out;
}

bool pvss_keyver(const PvssPublicParams& pp, const std::vector<u128>& pk,
                 const std::vector<u8>& proof) {
  if (!reduced_row(pk, pp.ps.u, pp.ps.q)) return false;
  return nizk_key_verify_bytes(pp.sigma, pp.crs_key, pk, proof);
}

PvssSharing pvss_share(const PvssPublicParams& pp,
                       const std::vector<std::vector<u128>>& qualified_pks,
                       u128 secret, u32 n_prime, u32 t, ChaChaRng& rng) {
  if (t != pp.ps.t)
    throw ConfigError("share: threshold differs from the derived ledger");
  if (n_prime <= t || n_prime > pp.ps.n)
    throw ConfigError("share: qualified count outside (t, n]");
  if (qualified_pks.size() != n_prime)
    throw ConfigError("share: key list does not match the qualified count");
  if (secret >= pp.ps.p) throw ConfigError("share: secret not reduced mod p");
  for (const auto& pk : qualified_pks)
    if (!reduced_row(pk, pp.ps.u, pp.ps.q))
      throw ConfigError("share: malformed qualified key");

  ShareWitness wit;
  wit.m = shamir_share(pp.sigma.mp, n_prime, t, secret, rng);
  wit.enc.reserve(n_prime);
  PvssSharing out;
  out.cts.reserve(n_prime);
  for (u32 j = 0; j < n_prime; ++j) {
    auto [ct, ew] = pke_enc(pp.pke, pp.a, qualified_pks[j], wit.m[j], rng);
    out.cts.push_back(std::move(ct));
    wit.enc.push_back(std::move(ew));
  }
  ShareStatement stmt{qualified_pks, out.cts};
  const SigmaContext& sc = pp.share_sigma(n_prime);
  const Crs& crs = pp.share_crs(n_prime);
  ShareProof proof = nizk_share_prove(sc, crs, stmt, wit, rng);
  out.proof = share_proof_encode(crs, proof);
  // The dealer keeps neither the plaintext shares nor the encryption
  // randomness once the proof exists.
  wipe(wit.m);
  for (auto& ew : wit.enc) {
    wipe(ew.r);
    ew.e = 0;
  }
  return out;
}

bool pvss_share_ver(const PvssPublicParams& pp,
                    const std::vector<std::vector<u128>>& qualified_pks,
                    u32 n_prime, u32 t, const std::vector<Ciphertext>& cts,
                    const std::vector<u8>& proof) {
  if (t != pp.ps.t || n_prime <= t || n_prime > pp.ps.n) return false;
  if (qualified_pks.size() != n_prime || cts.size() != n_prime) return false;
  for (const auto& pk : qualified_pks)
    if (!reduced_row(pk, pp.ps.u, pp.ps.q)) return false;
  for (const auto& ct : cts)
    if (!reduced_row(ct.c1, pp.ps.v, pp.ps.q) || ct.c2 >= pp.ps.q)
      return false;
  ShareStatement stmt{qualified_pks, cts};
  return nizk_share_verify_bytes(pp.share_sigma(n_prime),
                                 pp.share_crs(n_prime), stmt, proof);
}

PvssReveal pvss_dec(const PvssPublicParams& pp, const KeyPair& kp,
                    const Ciphertext& ct, ChaChaRng& rng) {
  DecResult dec = pke_dec(pp.pke, ct, kp.s);
  DecStatement stmt{kp.b, ct, dec.m};
  DecWitness wit{kp.s, kp.e, dec.f};
  DecProof proof = nizk_dec_prove(pp.sigma, pp.crs_dec, stmt, wit, rng);
  PvssReveal out;
  out.share = dec.m;
  out.proof = dec_proof_encode(pp.crs_dec, proof);
  wipe(wit.s);
  wipe(wit.e);
  wit.f = 0;
  return out;
}

bool pvss_dec_ver(const PvssPublicParams& pp, const std::vector<u128>& pk,
                  const Ciphertext& ct, u128 share,
                  const std::vector<u8>& proof) {
  if (!reduced_row(pk, pp.ps.u, pp.ps.q)) return false;
  if (!reduced_row(ct.c1, pp.ps.v, pp.ps.q) || ct.c2 >= pp.ps.q) return false;
  if (share >= pp.ps.p) return false;
  DecStatement stmt{pk, ct, share};
  return nizk_dec_verify_bytes(pp.sigma, pp.crs_dec, stmt, proof);
}

std::optional<u128> pvss_combine(const PvssPublicParams& pp,
                                 const std::vector<u32>& points,
                                 const std::vector<u128>& shares) {
  if (points.size() != shares.size()) return std::nullopt;
  if (points.size() <= pp.ps.t) return std::nullopt;
  std::vector<u32> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1 || sorted[i] > pp.ps.n) return std::nullopt;
    if (i > 0 && sorted[i] == sorted[i - 1]) return std::nullopt;
  }
  for (u128 s : shares)
    if (s >= pp.ps.p) return std::nullopt;
  return shamir_combine(pp.sigma.mp, points, shares);
}

// ----------------------------------------------------------- transcript ---

namespace {

constexpr const char* kTranscriptHeader = "format = lpvss-transcript-v1";

const char* const kHexDigits = "0123456789abcdef";

std::string bytes_to_hex(const std::vector<u8>& bytes) {
  if (bytes.empty()) return "-";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (u8 b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 15]);
  }
  return out;
}

std::vector<u8> bytes_from_hex(const std::string& hex) {
  if (hex == "-") return {};
  if (hex.empty() || hex.size() % 2 != 0)
    throw ParseError("transcript: odd or empty hex payload");
  auto digit = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  std::vector<u8> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = digit(hex[2 * i]), lo = digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw ParseError("transcript: bad hex digit");
    out[i] = u8((hi << 4) | lo);
  }
  return out;
}

std::string csv_u32(const std::vector<u32>& xs) {
  if (xs.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(xs[i]);
  }
  return out;
}

// Decimal u128 with no sign, no blanks, and no redundant leading zero; the
// writer only ever emits this form.
u128 parse_dec(const std::string& s, u128 limit, const char* what) {
  if (s.empty() || s.size() > 39)
    throw ParseError(std::string("transcript: bad number for ") + what);
  if (s.size() > 1 && s[0] == '0')
    throw ParseError(std::string("transcript: leading zero in ") + what);
  u128 x = 0;
  for (char c : s) {
    if (c < '0' || c > '9')
      throw ParseError(std::string("transcript: bad digit in ") + what);
    u128 next = x * 10 + u128(c - '0');
    if (next < x)
      throw ParseError(std::string("transcript: overflow in ") + what);
    x = next;
  }
  if (x >= limit)
    throw ParseError(std::string("transcript: value out of range for ") +
                     what);
  return x;
}

std::vector<u32> csv_from(const std::string& s, u32 limit, const char* what) {
  std::vector<u32> out;
  if (s == "-") return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::size_t end = comma == std::string::npos ? s.size() : comma;
    u128 x = parse_dec(s.substr(start, end - start), u128(limit) + 1, what);
    if (x < 1) throw ParseError(std::string("transcript: zero index in ") + what);
    if (!out.empty() && u32(x) <= out.back())
      throw ParseError(std::string("transcript: unsorted indices in ") + what);
    out.push_back(u32(x));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Strictly ordered "key = value" reader over the transcript's line grammar.
struct Lines {
  std::vector<std::pair<std::string, std::string>> kv;
  std::size_t pos = 0;

  explicit Lines(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto sep = line.find(" = ");
      if (sep == std::string::npos || sep == 0)
        throw ParseError("transcript: malformed line: " + line);
      std::string key = line.substr(0, sep);
      std::string value = line.substr(sep + 3);
      if (value.empty() || value.find(' ') != std::string::npos)
        throw ParseError("transcript: malformed value for " + key);
      kv.emplace_back(std::move(key), std::move(value));
    }
  }
  bool at(const std::string& key) const {
    return pos < kv.size() && kv[pos].first == key;
  }
  std::string take(const std::string& key) {
    if (!at(key))
      throw ParseError("transcript: expected key " + key +
                       (pos < kv.size() ? ", found " + kv[pos].first
                                        : std::string(", found end")));
    return kv[pos++].second;
  }
  void done() const {
    if (pos != kv.size())
      throw ParseError("transcript: trailing content at " + kv[pos].first);
  }
};

}  // namespace

std::string transcript_to_text(const ParamSet& ps, const PvssTranscript& tr) {
  Modulus mq(ps.q);
  std::ostringstream out;
  out << kTranscriptHeader << "\n";
  out << "scenario = " << (tr.scenario.empty() ? "-" : tr.scenario) << "\n";
  out << "n = " << tr.n << "\n";
  out << "t = " << tr.t << "\n";
  out << "nprime = " << tr.n_prime << "\n";
  out << "matrix = " << residues_to_hex(mq, tr.a.a) << "\n";
  for (std::size_t i = 0; i < tr.keys.size(); ++i) {
    const KeyRecord& k = tr.keys[i];
    out << "key." << (i + 1) << ".pk = " << residues_to_hex(mq, k.pk) << "\n";
    out << "key." << (i + 1) << ".proof = " << bytes_to_hex(k.proof) << "\n";
    out << "key." << (i + 1) << ".verdict = " << (k.verdict ? 1 : 0) << "\n";
  }
  out << "qualified = " << csv_u32(tr.qualified) << "\n";
  for (std::size_t j = 0; j < tr.cts.size(); ++j) {
    out << "share." << (j + 1)
        << ".c1 = " << residues_to_hex(mq, tr.cts[j].c1) << "\n";
    out << "share." << (j + 1) << ".c2 = "
        << residues_to_hex(mq, std::vector<u128>{tr.cts[j].c2}) << "\n";
  }
  if (!tr.cts.empty()) {
    out << "share.proof = " << bytes_to_hex(tr.share_proof) << "\n";
    out << "share.verdict = " << (tr.share_verdict ? 1 : 0) << "\n";
  }
  for (const RevealRecord& r : tr.reveals) {
    out << "reveal." << r.index << ".share = " << to_string_u128(r.share)
        << "\n";
    out << "reveal." << r.index << ".proof = " << bytes_to_hex(r.proof)
        << "\n";
    out << "reveal." << r.index << ".verdict = " << (r.verdict ? 1 : 0)
        << "\n";
  }
  out << "recon.set = " << csv_u32(tr.recon_set) << "\n";
  out << "recon.secret = "
      << (tr.output.has_value() ? to_string_u128(*tr.output) : "none") << "\n";
  return out.str();
}

PvssTranscript transcript_from_text(const ParamSet& ps,
                                    const std::string& text) {
  Modulus mq(ps.q);
  Lines in(text);
  if (!in.at("format") || in.take("format") != "lpvss-transcript-v1")
    throw ParseError("transcript: missing or unknown format line");
  PvssTranscript tr;
  tr.scenario = in.take("scenario");
  if (tr.scenario == "-") tr.scenario.clear();
  tr.n = u32(parse_dec(in.take("n"), 1u << 20, "n"));
  tr.t = u32(parse_dec(in.take("t"), 1u << 20, "t"));
  tr.n_prime = u32(parse_dec(in.take("nprime"), 1u << 20, "nprime"));
  if (tr.n != ps.n || tr.t != ps.t)
    throw ParseError("transcript: (n, t) differ from the parameter ledger");
  if (tr.n_prime > tr.n)
    throw ParseError("transcript: qualified count exceeds n");
  tr.a = Mat(ps.v, ps.u);
  tr.a.a = residues_from_hex(mq, in.take("matrix"),
                             std::size_t(ps.v) * ps.u);
  tr.keys.resize(tr.n);
  for (u32 i = 1; i <= tr.n; ++i) {
    std::string base = "key." + std::to_string(i) + ".";
    KeyRecord& k = tr.keys[i - 1];
    k.pk = residues_from_hex(mq, in.take(base + "pk"), ps.u);
    k.proof = bytes_from_hex(in.take(base + "proof"));
    u128 verdict = parse_dec(in.take(base + "verdict"), 2, "verdict");
    k.verdict = verdict == 1;
  }
  tr.qualified = csv_from(in.take("qualified"), tr.n, "qualified");
  if (tr.qualified.size() != tr.n_prime)
    throw ParseError("transcript: qualified list does not match nprime");
  if (tr.n_prime > tr.t) {
    tr.cts.resize(tr.n_prime);
    for (u32 j = 1; j <= tr.n_prime; ++j) {
      std::string base = "share." + std::to_string(j) + ".";
      tr.cts[j - 1].c1 = residues_from_hex(mq, in.take(base + "c1"), ps.v);
      tr.cts[j - 1].c2 = residues_from_hex(mq, in.take(base + "c2"), 1)[0];
    }
    tr.share_proof = bytes_from_hex(in.take("share.proof"));
    tr.share_verdict = parse_dec(in.take("share.verdict"), 2, "verdict") == 1;
  }
  while (in.pos < in.kv.size() && in.kv[in.pos].first.rfind("reveal.", 0) == 0) {
    RevealRecord r;
    const std::string& key = in.kv[in.pos].first;
    std::size_t dot = key.find('.', 7);
    if (dot == std::string::npos)
      throw ParseError("transcript: malformed reveal key " + key);
    r.index =
        u32(parse_dec(key.substr(7, dot - 7), u128(tr.n_prime) + 1, "reveal"));
    if (r.index < 1) throw ParseError("transcript: zero reveal index");
    if (!tr.reveals.empty() && r.index <= tr.reveals.back().index)
      throw ParseError("transcript: reveal indices out of order");
    std::string base = "reveal." + std::to_string(r.index) + ".";
    r.share = parse_dec(in.take(base + "share"), ps.p, "share");
    r.proof = bytes_from_hex(in.take(base + "proof"));
    r.verdict = parse_dec(in.take(base + "verdict"), 2, "verdict") == 1;
    tr.reveals.push_back(std::move(r));
  }
  if (!tr.reveals.empty() && tr.cts.empty())
    throw ParseError("transcript: reveals without a sharing");
  tr.recon_set = csv_from(in.take("recon.set"), tr.n_prime, "recon");
  std::string secret = in.take("recon.secret");
  if (secret != "none")
    tr.output = parse_dec(secret, ps.p, "secret");
  in.done();
  return tr;
}

VerifyReport verify_transcript(const PvssPublicParams& pp,
                               const PvssTranscript& tr) {
  const ParamSet& ps = pp.ps;
  auto fail = [](std::string what) { return VerifyReport{false, std::move(what)}; };
  if (tr.n != ps.n || tr.t != ps.t)
    return fail("header (n, t) differ from the parameter ledger");
  if (tr.a.rows != ps.v || tr.a.cols != ps.u ||
      tr.a.a != pp.a.a)
    return fail("public matrix differs from the parameter set");
  if (tr.keys.size() != tr.n) return fail("key record count differs from n");

  std::vector<u32> qualified;
  for (u32 i = 1; i <= tr.n; ++i) {
    const KeyRecord& k = tr.keys[i - 1];
    bool verdict = pvss_keyver(pp, k.pk, k.proof);
    if (verdict != k.verdict)
      return fail("key verdict " + std::to_string(i) + " does not reproduce");
    if (verdict) qualified.push_back(i);
  }
  if (qualified != tr.qualified)
    return fail("qualified set does not match the key verdicts");
  if (tr.n_prime != qualified.size())
    return fail("qualified count does not match the key verdicts");

  if (tr.n_prime <= tr.t) {
    if (!tr.cts.empty() || !tr.share_proof.empty() || tr.share_verdict ||
        !tr.reveals.empty() || !tr.recon_set.empty() || tr.output.has_value())
      return fail("phases recorded past an unqualified key phase");
    return {true, ""};
  }

  if (tr.cts.size() != tr.n_prime)
    return fail("ciphertext count differs from the qualified count");
  std::vector<std::vector<u128>> pks;
  pks.reserve(tr.n_prime);
  for (u32 orig : tr.qualified) pks.push_back(tr.keys[orig - 1].pk);
  bool share_ok =
      pvss_share_ver(pp, pks, tr.n_prime, tr.t, tr.cts, tr.share_proof);
  if (share_ok != tr.share_verdict)
    return fail("sharing verdict does not reproduce");

  if (!tr.share_verdict) {
    if (!tr.reveals.empty() || !tr.recon_set.empty() || tr.output.has_value())
      return fail("phases recorded past a rejected sharing");
    return {true, ""};
  }

  std::vector<u32> recon;
  std::vector<u128> shares;
  u32 last = 0;
  for (const RevealRecord& r : tr.reveals) {
    if (r.index < 1 || r.index > tr.n_prime || r.index <= last)
      return fail("reveal indices out of order");
    last = r.index;
    if (r.share >= ps.p) return fail("revealed share not reduced");
    const std::vector<u128>& pk = tr.keys[tr.qualified[r.index - 1] - 1].pk;
    bool verdict = pvss_dec_ver(pp, pk, tr.cts[r.index - 1], r.share, r.proof);
    if (verdict != r.verdict)
      return fail("reveal verdict " + std::to_string(r.index) +
                  " does not reproduce");
    if (verdict) {
      recon.push_back(r.index);
      shares.push_back(r.share);
    }
  }
  if (recon != tr.recon_set)
    return fail("reconstruction set does not match the reveal verdicts");

  std::optional<u128> output = pvss_combine(pp, recon, shares);
  if (output != tr.output) return fail("reconstruction output does not reproduce");
  return {true, ""};
}

}  // namespace lpvss
