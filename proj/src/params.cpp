#include "lpvss/params.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "lpvss/fixnum.hpp"
#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

u128 ceil_sqrt(u128 x) {
  u128 r = wide::isqrt(x);
  return r * r == x ? r : r + 1;
}

u64 ceil_log2(u128 x) {
  require(x >= 1, "ceil_log2: zero");
  return x == 1 ? 0 : bitlen_u128(x - 1);
}

std::optional<u128> mul_checked(u128 a, u128 b) {
  if (a != 0 && b > ~u128(0) / a) return std::nullopt;
  return a * b;
}

std::optional<u128> add_checked(u128 a, u128 b) {
  if (b > ~u128(0) - a) return std::nullopt;
  return a + b;
}

std::optional<u128> sq_checked(u128 a) { return mul_checked(a, a); }

// floor(a * l / 2^shift) when it fits 128 bits, else nullopt.
std::optional<u128> scaled_product(u128 a, u128 l, unsigned shift) {
  wide::u256 t = wide::shr(wide::mul128(a, l), shift);
  if (t.w[2] || t.w[3]) return std::nullopt;
  return wide::lo128(t);
}

// Everything derive computes for a candidate root p; nullopt = the chain
// overflows 128-bit arithmetic (treated as infeasible).
struct Chain {
  u128 q;
  u32 u, k, u0;
  u64 alpha_q, beta_q_x2, r_w;
  u128 sigma_key, sigma_enc, sigma_dec;
  u128 b_key_star2, b_enc_f, b_dec_star2;
  u128 tkey;  // floor(B*_key)
  u128 lnm_key, lnm_enc, lnm_dec;
};

u128 lnm_q96(u128 l_lo) {
  u128 t1 = wide::lo128(wide::divmod(wide::shl(wide::make(0, 1), 192), l_lo).quot);
  u128 t2 = wide::lo128(wide::shr(wide::mul128(12 * t1, t1), 96));
  return t1 + t2;
}

std::optional<Chain> build_chain(u32 n, u32 v, u32 lam, u128 p) {
  if (n < 1 || v < 1 || lam < 1) return std::nullopt;
  Chain c{};
  auto q = mul_checked(p, p);
  if (!q) return std::nullopt;
  c.q = *q;
  if (c.q < 9) return std::nullopt;
  c.k = u32(ceil_log2(c.q));
  c.u0 = v;
  u64 u64u = u64(v) * (u64(c.k) + 1);
  if (u64u > (u64(1) << 24)) return std::nullopt;  // far beyond any request
  c.u = u32(u64u);
  c.alpha_q = u64(ceil_sqrt(v));
  c.r_w = ceil_log2(c.u) + 1;
  c.beta_q_x2 = u64(ceil_sqrt(c.u)) * ceil_log2(c.u) * (2 * c.alpha_q + 1);

  u128 aq2 = u128(c.alpha_q) * c.alpha_q;
  u128 b_key_s2 = u128(v) * aq2;
  u128 b_key_e2 = u128(c.u) * aq2;

  u64 dim_key = u64(lam) * (u64(c.u) + v);
  u64 dim_enc = u64(lam) * n * (u64(c.u) + 1);
  u64 dim_dec = dim_key + lam;
  fx::LnBounds lk = fx::ln_int_q96(dim_key);
  fx::LnBounds le = fx::ln_int_q96(dim_enc);
  fx::LnBounds ld = fx::ln_int_q96(dim_dec);

  // sigma_key: (5/2)^2 * lam (Bs^2 + Be^2) * ln, floored at Q0, then the
  // integer ceil of the root.
  auto a2_key = mul_checked(u128(lam), b_key_s2 + b_key_e2);
  if (!a2_key) return std::nullopt;
  auto y = mul_checked(25, *a2_key);
  if (!y) return std::nullopt;
  auto yk = scaled_product(*y, lk.hi, 98);
  if (!yk) return std::nullopt;
  c.sigma_key = wide::isqrt(*yk) + 1;

  auto sk2 = sq_checked(c.sigma_key);
  if (!sk2) return std::nullopt;
  auto bks = mul_checked(4 * (u128(c.u) + v), *sk2);
  if (!bks) return std::nullopt;
  c.b_key_star2 = *bks;
  c.tkey = wide::isqrt(c.b_key_star2);

  // sigma_enc, with B^enc bounds carried x2 (hence the x4 under the root).
  auto be2x4 = mul_checked(u128(v), u128(c.beta_q_x2) * c.beta_q_x2);
  if (!be2x4) return std::nullopt;
  auto br2x4 = mul_checked(4 * u128(c.u), u128(c.r_w) * c.r_w);
  if (!br2x4) return std::nullopt;
  auto sum = add_checked(*be2x4, *br2x4);
  if (!sum) return std::nullopt;
  auto a2_enc = mul_checked(u128(lam) * n, *sum);
  if (!a2_enc) return std::nullopt;
  auto ye = scaled_product(*a2_enc, le.hi, 98);
  if (!ye) return std::nullopt;
  c.sigma_enc = wide::isqrt(*ye) + 1;

  // B*_enc_f = floor(2 sigma_enc sqrt(u+1) (B*_key_e + 1)) + 1, with
  // B*_key_e + 1 <= tkey + 2.
  auto se2 = sq_checked(c.sigma_enc);
  if (!se2) return std::nullopt;
  auto z1 = mul_checked(4, *se2);
  if (z1) z1 = mul_checked(*z1, u128(c.u) + 1);
  auto tk2 = sq_checked(c.tkey + 2);
  if (!z1 || !tk2) return std::nullopt;
  auto z2 = mul_checked(*z1, *tk2);
  if (!z2) return std::nullopt;
  c.b_enc_f = wide::isqrt(*z2) + 1;

  auto bf2 = mul_checked(c.b_enc_f, c.b_enc_f);
  if (!bf2) return std::nullopt;
  auto sd = add_checked(2 * c.b_key_star2, *bf2);
  if (!sd) return std::nullopt;
  auto a2_dec = mul_checked(u128(lam), *sd);
  if (!a2_dec) return std::nullopt;
  auto yd = scaled_product(*a2_dec, ld.hi, 96);
  if (!yd) return std::nullopt;
  c.sigma_dec = wide::isqrt(*yd) + 1;
  auto sd2 = sq_checked(c.sigma_dec);
  if (!sd2) return std::nullopt;
  auto bds = mul_checked(4 * (u128(c.u) + v + 1), *sd2);
  if (!bds) return std::nullopt;
  c.b_dec_star2 = *bds;

  c.lnm_key = lnm_q96(lk.lo);
  c.lnm_enc = lnm_q96(le.lo);
  c.lnm_dec = lnm_q96(ld.lo);
  return c;
}

// The inequality ledger over a built chain.  Returns violation names.
std::vector<std::string> check_chain(const Chain& c, u32 n, u32 v, u128 p) {
  std::vector<std::string> bad;
  auto fail = [&](const char* name) { bad.emplace_back(name); };

  u128 cl2p = ceil_log2(p);
  u128 su = ceil_sqrt(c.u), sv = ceil_sqrt(v);

  auto inj = [&](u128 b2) -> bool {
    auto m1 = mul_checked(16 * u128(v), cl2p);
    if (!m1) return false;
    auto m2 = mul_checked(*m1, b2);
    return m2 && *m2 <= c.q;
  };
  if (!inj(c.b_key_star2)) fail("key_injectivity");
  if (!(2 * c.b_enc_f >= c.b_enc_f && 2 * c.b_enc_f < p)) {
    fail("enc_f_below_half_p");
  }
  // Honest decrypt noise sqrt(u) r_w B*_key_e + sqrt(v) beta q fits under
  // B*_enc_f (everything x2).
  auto noise = [&]() -> std::optional<u128> {
    auto a = mul_checked(2 * su * c.r_w, c.tkey + 1);
    if (!a) return std::nullopt;
    return add_checked(*a, sv * c.beta_q_x2);
  }();
  if (!(noise && *noise < 2 * c.b_enc_f)) fail("enc_f_sandwich");
  if (!(4 * c.b_dec_star2 > c.b_dec_star2 && 4 * c.b_dec_star2 < c.q)) {
    fail("dec_star_below_half_p");
  }
  if (!inj(c.b_dec_star2)) fail("dec_injectivity");
  auto corr = [&]() -> std::optional<u128> {
    auto a = mul_checked(2 * su * c.r_w, c.tkey + 1);
    if (!a) return std::nullopt;
    return add_checked(*a, c.beta_q_x2);
  }();
  if (!(corr && *corr < p)) fail("pke_correctness");
  if (u128(n) >= p) fail("n_below_p");
  if (c.q >= (u128(1) << 125)) fail("q_within_arithmetic_range");
  return bad;
}

bool feasible(u32 n, u32 v, u32 lam, u128 p, u32 max_q_bits) {
  if (p <= n || p < 3) return false;
  auto q = mul_checked(p, p);
  if (!q || bitlen_u128(*q) > max_q_bits || *q >= (u128(1) << 125)) {
    return false;
  }
  auto c = build_chain(n, v, lam, p);
  if (!c) return false;
  return check_chain(*c, n, v, p).empty();
}

ParamSet pack(u32 n, u32 t, u32 lam, u32 v, u128 p, const Chain& c) {
  ParamSet ps;
  ps.n = n;
  ps.t = t;
  ps.v = v;
  ps.lambda_rep = lam;
  ps.p = p;
  ps.q = c.q;
  ps.u = c.u;
  ps.k = c.k;
  ps.u0 = c.u0;
  ps.alpha_q = c.alpha_q;
  ps.beta_q_x2 = c.beta_q_x2;
  ps.r_w = c.r_w;
  ps.sigma_key_q32 = c.sigma_key << 32;
  ps.sigma_enc_q32 = c.sigma_enc << 32;
  ps.sigma_dec_q32 = c.sigma_dec << 32;
  ps.b_key_star2 = c.b_key_star2;
  ps.b_enc_f = c.b_enc_f;
  ps.b_dec_star2 = c.b_dec_star2;
  ps.lnm_key_q96 = c.lnm_key;
  ps.lnm_enc_q96 = c.lnm_enc;
  ps.lnm_dec_q96 = c.lnm_dec;
  return ps;
}

}  // namespace

u128 ParamSet::keygen_s2() const { return u128(v) * alpha_q * alpha_q; }
u128 ParamSet::keygen_e2() const { return u128(u) * alpha_q * alpha_q; }
u128 ParamSet::enc_r2() const { return u128(u) * r_w * r_w; }
u128 ParamSet::enc_e2_x4() const { return u128(v) * beta_q_x2 * beta_q_x2; }
u128 ParamSet::key_sig_norm2() const {
  return (u128(u) + v) * sigma_key() * sigma_key();
}
u128 ParamSet::enc_sig_norm2() const {
  return (u128(u) + 1) * sigma_enc() * sigma_enc();
}
u128 ParamSet::dec_sig_norm2() const {
  return (u128(u) + v + 1) * sigma_dec() * sigma_dec();
}
u128 ParamSet::b_key_star_floor() const { return wide::isqrt(b_key_star2); }

bool mr_is_prime(u128 x) {
  static const u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (x < 2) return false;
  for (u64 b : kBases) {
    if (x % b == 0) return x == b;
  }
  require(x < (u128(1) << 81), "mr_is_prime: beyond certified range");
  Modulus m(x);
  u128 d = x - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 b : kBases) {
    u128 y = m.pow(b, d);
    if (y == 1 || y == x - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < r; ++i) {
      y = m.mul(y, y);
      if (y == x - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

ParamSet derive_params(const ParamRequest& req) {
  if (req.n < 2 || req.v < 1 || req.lambda_rep < 1) {
    throw ConfigError("derive_params: n >= 2, v >= 1, rep >= 1 required");
  }
  if (2 * u64(req.t) >= req.n) {
    throw ConfigError("derive_params: need t < n/2");
  }
  if (req.max_q_bits < 8 || req.max_q_bits > 160) {
    throw ConfigError("derive_params: max_q_bits out of range");
  }
  const char* kInfeasible = "parameters infeasible at requested cap";

  auto ok = [&](u128 x) {
    return feasible(req.n, req.v, req.lambda_rep, x, req.max_q_bits);
  };
  auto under_cap = [&](u128 x) {
    auto q = mul_checked(x, x);
    return q && bitlen_u128(*q) <= req.max_q_bits;
  };

  u128 x = 5;
  while (!ok(x)) {
    x *= 2;
    if (!under_cap(x)) throw ConfigError(kInfeasible);
  }
  u128 lo = x / 2, hi = x;  // ok(hi), !ok(lo) (or hi == 5)
  while (lo + 1 < hi) {
    u128 mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  u128 p = hi;
  while (!(mr_is_prime(p) && ok(p))) {
    ++p;
    if (!under_cap(p)) throw ConfigError(kInfeasible);
  }

  auto c = build_chain(req.n, req.v, req.lambda_rep, p);
  require(c.has_value(), "derive_params: chain vanished after search");
  ParamSet ps = pack(req.n, req.t, req.lambda_rep, req.v, p, *c);
  require(validate_params(ps).empty(), "derive_params: self-check failed");
  return ps;
}

std::vector<std::string> validate_params(const ParamSet& ps) {
  std::vector<std::string> bad;
  if (ps.n < 2 || 2 * u64(ps.t) >= ps.n) bad.emplace_back("threshold_rule");
  if (ps.v < 1 || ps.lambda_rep < 1) bad.emplace_back("dims_positive");
  if (ps.p >= (u128(1) << 81) || !mr_is_prime(ps.p)) {
    bad.emplace_back("p_prime");  // beyond the certified MR range = invalid
  }
  if ((ps.sigma_key_q32 | ps.sigma_enc_q32 | ps.sigma_dec_q32)
      & ((u128(1) << 32) - 1)) {
    bad.emplace_back("sigma_integer");
  }
  auto c = build_chain(ps.n, ps.v, ps.lambda_rep, ps.p);
  if (!c) {
    bad.emplace_back("arithmetic_overflow");
    return bad;
  }
  auto pin = [&](bool same, const char* name) {
    if (!same) bad.emplace_back(std::string("field_mismatch:") + name);
  };
  pin(ps.q == c->q, "q");
  pin(ps.u == c->u, "u");
  pin(ps.k == c->k, "k");
  pin(ps.u0 == c->u0, "u0");
  pin(ps.alpha_q == c->alpha_q, "alpha_q");
  pin(ps.beta_q_x2 == c->beta_q_x2, "beta_q_x2");
  pin(ps.r_w == c->r_w, "r_w");
  pin(ps.sigma_key() == c->sigma_key, "sigma_key");
  pin(ps.sigma_enc() == c->sigma_enc, "sigma_enc");
  pin(ps.sigma_dec() == c->sigma_dec, "sigma_dec");
  pin(ps.b_key_star2 == c->b_key_star2, "b_key_star2");
  pin(ps.b_enc_f == c->b_enc_f, "b_enc_f");
  pin(ps.b_dec_star2 == c->b_dec_star2, "b_dec_star2");
  pin(ps.lnm_key_q96 == c->lnm_key, "lnm_key");
  pin(ps.lnm_enc_q96 == c->lnm_enc, "lnm_enc");
  pin(ps.lnm_dec_q96 == c->lnm_dec, "lnm_dec");

  // Inequality ledger on the stored values (so a forced bad bound is named
  // even though the recomputation also flags it).
  Chain stored = *c;
  stored.q = ps.q;
  stored.b_key_star2 = ps.b_key_star2;
  stored.b_enc_f = ps.b_enc_f;
  stored.b_dec_star2 = ps.b_dec_star2;
  stored.tkey = wide::isqrt(ps.b_key_star2);
  for (auto& name : check_chain(stored, ps.n, ps.v, ps.p)) {
    bad.push_back(name);
  }
  return bad;
}

namespace {

const char* const kConfigHeader = "# lpvss params v1";
const char* const kKeys[] = {
    "n",  "t",  "v",  "lambda_rep", "p",  "q",
    "u",  "k",  "u0", "alpha_q",    "beta_q_x2", "r_w",
    "sigma_key_q32", "sigma_enc_q32", "sigma_dec_q32",
    "b_key_star2",   "b_enc_f",       "b_dec_star2",
    "lnm_key_q96",   "lnm_enc_q96",   "lnm_dec_q96",
};

u128 get_field(const ParamSet& ps, const std::string& key) {
  if (key == "n") return ps.n;
  if (key == "t") return ps.t;
  if (key == "v") return ps.v;
  if (key == "lambda_rep") return ps.lambda_rep;
  if (key == "p") return ps.p;
  if (key == "q") return ps.q;
  if (key == "u") return ps.u;
  if (key == "k") return ps.k;
  if (key == "u0") return ps.u0;
  if (key == "alpha_q") return ps.alpha_q;
  if (key == "beta_q_x2") return ps.beta_q_x2;
  if (key == "r_w") return ps.r_w;
  if (key == "sigma_key_q32") return ps.sigma_key_q32;
  if (key == "sigma_enc_q32") return ps.sigma_enc_q32;
  if (key == "sigma_dec_q32") return ps.sigma_dec_q32;
  if (key == "b_key_star2") return ps.b_key_star2;
  if (key == "b_enc_f") return ps.b_enc_f;
  if (key == "b_dec_star2") return ps.b_dec_star2;
  if (key == "lnm_key_q96") return ps.lnm_key_q96;
  if (key == "lnm_enc_q96") return ps.lnm_enc_q96;
  if (key == "lnm_dec_q96") return ps.lnm_dec_q96;
  throw LogicError("get_field: unknown key");
}

void set_field(ParamSet& ps, const std::string& key, u128 val) {
  auto as_u32 = [&](u32& dst) {
    if (val > 0xffffffffu) throw ParseError("params: value too large: " + key);
    dst = u32(val);
  };
  auto as_u64 = [&](u64& dst) {
    if (val > ~u64(0)) throw ParseError("params: value too large: " + key);
    dst = u64(val);
  };
  if (key == "n") return as_u32(ps.n);
  if (key == "t") return as_u32(ps.t);
  if (key == "v") return as_u32(ps.v);
  if (key == "lambda_rep") return as_u32(ps.lambda_rep);
  if (key == "p") { ps.p = val; return; }
  if (key == "q") { ps.q = val; return; }
  if (key == "u") return as_u32(ps.u);
  if (key == "k") return as_u32(ps.k);
  if (key == "u0") return as_u32(ps.u0);
  if (key == "alpha_q") return as_u64(ps.alpha_q);
  if (key == "beta_q_x2") return as_u64(ps.beta_q_x2);
  if (key == "r_w") return as_u64(ps.r_w);
  if (key == "sigma_key_q32") { ps.sigma_key_q32 = val; return; }
  if (key == "sigma_enc_q32") { ps.sigma_enc_q32 = val; return; }
  if (key == "sigma_dec_q32") { ps.sigma_dec_q32 = val; return; }
  if (key == "b_key_star2") { ps.b_key_star2 = val; return; }
  if (key == "b_enc_f") { ps.b_enc_f = val; return; }
  if (key == "b_dec_star2") { ps.b_dec_star2 = val; return; }
  if (key == "lnm_key_q96") { ps.lnm_key_q96 = val; return; }
  if (key == "lnm_enc_q96") { ps.lnm_enc_q96 = val; return; }
  if (key == "lnm_dec_q96") { ps.lnm_dec_q96 = val; return; }
  throw ParseError("params: unknown key: " + key);
}

}  // namespace

std::string param_set_to_config(const ParamSet& ps) {
  std::ostringstream out;
  out << kConfigHeader << "\n";
  for (const char* key : kKeys) {
    out << key << " = " << to_string_u128(get_field(ps, key)) << "\n";
  }
  return out.str();
}

ParamSet param_set_from_config(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kConfigHeader) {
    throw ParseError("params: missing header line");
  }
  ParamSet ps;
  std::map<std::string, bool> seen;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto sep = line.find(" = ");
    if (sep == std::string::npos) {
      throw ParseError("params: malformed line: " + line);
    }
    std::string key = line.substr(0, sep);
    if (seen[key]) throw ParseError("params: duplicate key: " + key);
    seen[key] = true;
    set_field(ps, key, parse_u128(line.substr(sep + 3)));
  }
  for (const char* key : kKeys) {
    if (!seen[key]) throw ParseError(std::string("params: missing key: ") + key);
  }
  return ps;
}

}  // namespace lpvss
