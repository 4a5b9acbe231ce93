#include "lpvss/modmath.hpp"

#include "lpvss/wide.hpp"

namespace lpvss {

Modulus::Modulus(u128 modulus) : q(modulus) {
  if (q < 2) throw ConfigError("modulus must be >= 2");
  if (q <= (u128(1) << 64)) {
    mont = false;
    return;
  }
  if (!(q & 1)) throw ConfigError("large even moduli are not supported");
  if (q >= (u128(1) << 126)) throw ConfigError("modulus must be < 2^126");
  mont = true;
  // Newton iteration for q^{-1} mod 2^128: doubling precision from 3 bits.
  u128 x = q;
  for (int i = 0; i < 6; ++i) x *= 2 - q * x;
  qinv_neg = u128(0) - x;
  r1 = wide::mod(wide::make(1, 0), q);
  r2 = wide::mod(wide::mul128(r1, r1), q);
}

u128 Modulus::mont_mul(u128 a, u128 b) const {
  // REDC: (a*b + m*q) / 2^128 with m chosen to cancel the low half.
  wide::u256 t = wide::mul128(a, b);
  u128 m = wide::lo128(t) * qinv_neg;
  wide::u256 s = wide::add(t, wide::mul128(m, q));
  u128 r = wide::hi128(s);  // t + m*q < 2^255, no 256-bit overflow
  return r >= q ? r - q : r;
}

u128 Modulus::pow(u128 a, u128 e) const {
  a %= q;
  if (!mont) {
    u128 acc = 1 % q, base = a;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }
  u128 acc = r1, base = to_mont(a);
  while (e) {
    if (e & 1) acc = mont_mul(acc, base);
    base = mont_mul(base, base);
    e >>= 1;
  }
  return from_mont(acc);
}

u128 Modulus::inv(u128 a) const {
  a %= q;
  if (a == 0) throw LogicError("inverse of zero");
  u128 old_r = a, r = q;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    u128 quo = old_r / r;
    u128 nr = old_r - quo * r;
    old_r = r;
    r = nr;
    i128 ns = old_s - i128(quo) * s;  // coefficients stay below q < 2^126
    old_s = s;
    s = ns;
  }
  if (old_r != 1) throw LogicError("element not invertible");
  return old_s < 0 ? q - u128(-old_s) : u128(old_s);
}

i128 center_lift(u128 x, u128 q) {
  u128 r = x % q;
  return r > q / 2 ? -i128(q - r) : i128(r);
}

u128 from_centered(i128 v, u128 q) {
  if (v >= 0) return u128(v) % q;
  u128 mag = (u128(0) - u128(v)) % q;  // |v| mod q without signed overflow
  return mag == 0 ? 0 : q - mag;
}

std::optional<u128> norm2_checked(const i128* v, std::size_t n) {
  require(n <= (std::size_t(1) << 14), "norm2: vector too long");
  u128 acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    i128 x = v[i];
    u128 mag = x < 0 ? u128(0) - u128(x) : u128(x);
    if (mag >= (u128(1) << 56)) return std::nullopt;
    acc += mag * mag;  // <= 2^14 * 2^112 = 2^126, no wrap
  }
  return acc;
}

u128 l2_floor(u128 norm2) { return wide::isqrt(norm2); }

unsigned bitlen_u128(u128 x) {
  unsigned n = 0;
  while (x) {
    ++n;
    x >>= 1;
  }
  return n;
}

std::vector<u128> mat_vec(const Modulus& m, const Mat& A,
                          const std::vector<u128>& x) {
  require(A.cols == x.size(), "mat_vec: dimension mismatch");
  std::vector<u128> out(A.rows, 0);
  if (!m.mont) {
    for (std::size_t r = 0; r < A.rows; ++r) {
      u128 acc = 0;
      const u128* row = A.a.data() + r * A.cols;
      for (std::size_t c = 0; c < A.cols; ++c) {
        acc = m.add(acc, (row[c] * x[c]) % m.q);
      }
      out[r] = acc;
    }
    return out;
  }
  // mont_mul(a_plain, x*R) = a*x: converting x once makes every matrix
  // entry cost a single Montgomery product.
  std::vector<u128> xm(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) xm[c] = m.to_mont(x[c]);
  for (std::size_t r = 0; r < A.rows; ++r) {
    u128 acc = 0;
    const u128* row = A.a.data() + r * A.cols;
    for (std::size_t c = 0; c < A.cols; ++c) {
      acc = m.add(acc, m.mont_mul(row[c], xm[c]));
    }
    out[r] = acc;
  }
  return out;
}

std::vector<u128> vec_mat(const Modulus& m, const std::vector<u128>& x,
                          const Mat& A) {
  require(A.rows == x.size(), "vec_mat: dimension mismatch");
  std::vector<u128> out(A.cols, 0);
  for (std::size_t r = 0; r < A.rows; ++r) {
    const u128* row = A.a.data() + r * A.cols;
    if (!m.mont) {
      for (std::size_t c = 0; c < A.cols; ++c) {
        out[c] = m.add(out[c], (row[c] * x[r]) % m.q);
      }
    } else {
      u128 xm = m.to_mont(x[r]);
      for (std::size_t c = 0; c < A.cols; ++c) {
        out[c] = m.add(out[c], m.mont_mul(row[c], xm));
      }
    }
  }
  return out;
}

u128 dot(const Modulus& m, const std::vector<u128>& a,
         const std::vector<u128>& b) {
  require(a.size() == b.size(), "dot: dimension mismatch");
  u128 acc = 0;
  if (!m.mont) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      acc = m.add(acc, (a[i] * b[i]) % m.q);
    }
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc = m.add(acc, m.mont_mul(m.to_mont(a[i]), b[i]));
  }
  return acc;
}

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string residues_to_hex(const Modulus& m, const std::vector<u128>& v) {
  static const char* digits = "0123456789abcdef";
  unsigned width = (bitlen_u128(m.q) + 7) / 8;  // bytes per residue
  std::string out;
  out.reserve(v.size() * width * 2);
  for (u128 r : v) {
    require(r < m.q, "residues_to_hex: value out of range");
    for (unsigned b = 0; b < width; ++b) {  // little-endian bytes
      u8 byte = u8(r >> (8 * b));
      out.push_back(digits[byte >> 4]);
      out.push_back(digits[byte & 15]);
    }
  }
  return out;
}

std::vector<u128> residues_from_hex(const Modulus& m, const std::string& hex,
                                    std::size_t count) {
  unsigned width = (bitlen_u128(m.q) + 7) / 8;
  if (hex.size() != count * width * 2) {
    throw ParseError("residue hex has wrong length");
  }
  std::vector<u128> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    u128 r = 0;
    for (unsigned b = 0; b < width; ++b) {
      int hi = hex_digit(hex[2 * (i * width + b)]);
      int lo = hex_digit(hex[2 * (i * width + b) + 1]);
      if (hi < 0 || lo < 0) throw ParseError("bad hex digit in residues");
      r |= u128((hi << 4) | lo) << (8 * b);
    }
    if (r >= m.q) throw ParseError("residue out of range");
    out[i] = r;
  }
  return out;
}

}  // namespace lpvss
