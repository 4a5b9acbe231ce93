#include "lpvss/shamir.hpp"

#include <algorithm>

namespace lpvss {

namespace {

void check_nt(const Modulus& p, u32 n, u32 t) {
  if (n == 0) throw ConfigError("shamir: n must be positive");
  if (t >= n) throw ConfigError("shamir: need t < n");
  if (u128(n) >= p.q) throw ConfigError("shamir: need n < p");
}

std::vector<u128> eval_poly(const Modulus& p, const std::vector<u128>& coeffs,
                            u32 n) {
  std::vector<u128> out(n);
  for (u32 x = 1; x <= n; ++x) {
    u128 acc = 0;
    for (std::size_t e = coeffs.size(); e-- > 0;) {
      acc = p.add(p.mul(acc, x), coeffs[e]);
    }
    out[x - 1] = acc;
  }
  return out;
}

std::vector<u128> random_coeffs(const Modulus& p, u32 t, ChaChaRng& rng) {
  std::vector<u128> coeffs(std::size_t(t) + 1);
  for (auto& c : coeffs) c = rng.below_u128(p.q);
  return coeffs;
}

}  // namespace

std::vector<u128> shamir_share(const Modulus& p, u32 n, u32 t, u128 secret,
                               ChaChaRng& rng) {
  check_nt(p, n, t);
  if (secret >= p.q) throw ConfigError("shamir: secret out of range");
  std::vector<u128> coeffs = random_coeffs(p, t, rng);
  coeffs[0] = secret;
  return eval_poly(p, coeffs, n);
}

std::vector<u128> random_codeword(const Modulus& p, u32 n, u32 t,
                                  ChaChaRng& rng) {
  check_nt(p, n, t);
  return eval_poly(p, random_coeffs(p, t, rng), n);
}

Mat parity_matrix(const Modulus& p, u32 n, u32 t) {
  check_nt(p, n, t);
  u32 cols = n - t - 1;
  Mat h(n, cols);
  for (u32 i = 1; i <= n; ++i) {
    u128 d = 1;
    for (u32 k = 1; k <= n; ++k) {
      if (k == i) continue;
      u128 diff = i >= k ? u128(i - k) : p.q - u128(k - i);
      d = p.mul(d, diff);
    }
    u128 v = p.inv(d);
    u128 pw = v;
    for (u32 j = 0; j < cols; ++j) {
      h.at(i - 1, j) = pw;
      pw = p.mul(pw, i);
    }
  }
  return h;
}

bool in_code(const Modulus& p, const Mat& h, const std::vector<u128>& w) {
  if (w.size() != h.rows) throw ConfigError("in_code: length mismatch");
  for (std::size_t j = 0; j < h.cols; ++j) {
    u128 acc = 0;
    for (std::size_t i = 0; i < h.rows; ++i) {
      acc = p.add(acc, p.mul(w[i], h.at(i, j)));
    }
    if (acc != 0) return false;
  }
  return true;
}

std::vector<u128> lagrange_at_zero(const Modulus& p,
                                   const std::vector<u32>& points) {
  if (points.empty()) throw ConfigError("lagrange: no points");
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (points[a] == 0 || u128(points[a]) >= p.q) {
      throw ConfigError("lagrange: point out of range");
    }
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (points[a] == points[b]) {
        throw ConfigError("lagrange: repeated point");
      }
    }
  }
  std::vector<u128> lam(points.size());
  for (std::size_t a = 0; a < points.size(); ++a) {
    u128 num = 1, den = 1;
    for (std::size_t b = 0; b < points.size(); ++b) {
      if (b == a) continue;
      u32 i = points[a], j = points[b];
      num = p.mul(num, j);
      u128 diff = j >= i ? u128(j - i) : p.q - u128(i - j);
      den = p.mul(den, diff);
    }
    lam[a] = p.mul(num, p.inv(den));
  }
  return lam;
}

u128 shamir_combine(const Modulus& p, const std::vector<u32>& points,
                    const std::vector<u128>& shares) {
  if (points.size() != shares.size()) {
    throw ConfigError("combine: length mismatch");
  }
  std::vector<u128> lam = lagrange_at_zero(p, points);
  u128 acc = 0;
  for (std::size_t i = 0; i < shares.size(); ++i) {
    acc = p.add(acc, p.mul(lam[i], shares[i]));
  }
  return acc;
}

}  // namespace lpvss
