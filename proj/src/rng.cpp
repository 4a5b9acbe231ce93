#include "lpvss/rng.hpp"

#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

inline u32 rotl(u32 x, int n) { return (x << n) | (x >> (32 - n)); }

inline void quarter(u32& a, u32& b, u32& c, u32& d) {
  a += b; d ^= a; d = rotl(d, 16);
  c += d; b ^= c; b = rotl(b, 12);
  a += b; d ^= a; d = rotl(d, 8);
  c += d; b ^= c; b = rotl(b, 7);
}

}  // namespace

void ChaChaRng::block_raw(const u32 key[8], u32 counter, const u32 nonce[3],
                          u8 out[64]) {
  u32 st[16] = {0x61707865, 0x3320646e, 0x79622d32, 0x6b206574,
                key[0],     key[1],     key[2],     key[3],
                key[4],     key[5],     key[6],     key[7],
                counter,    nonce[0],   nonce[1],   nonce[2]};
  u32 w[16];
  for (int i = 0; i < 16; ++i) w[i] = st[i];
  for (int r = 0; r < 10; ++r) {
    quarter(w[0], w[4], w[8], w[12]);
    quarter(w[1], w[5], w[9], w[13]);
    quarter(w[2], w[6], w[10], w[14]);
    quarter(w[3], w[7], w[11], w[15]);
    quarter(w[0], w[5], w[10], w[15]);
    quarter(w[1], w[6], w[11], w[12]);
    quarter(w[2], w[7], w[8], w[13]);
    quarter(w[3], w[4], w[9], w[14]);
  }
  for (int i = 0; i < 16; ++i) {
    u32 v = w[i] + st[i];
    out[4 * i + 0] = u8(v);
    out[4 * i + 1] = u8(v >> 8);
    out[4 * i + 2] = u8(v >> 16);
    out[4 * i + 3] = u8(v >> 24);
  }
}

ChaChaRng::ChaChaRng(u64 seed) {
  key_[0] = u32(seed);
  key_[1] = u32(seed >> 32);
  // Remaining key words are a fixed domain pad so a root stream is never
  // key-identical to a forked child (children get full 256-bit keys).
  key_[2] = 0x6c707673;  // "lpvs"
  key_[3] = 0x732d7631;  // "s-v1"
  key_[4] = key_[5] = key_[6] = key_[7] = 0;
}

ChaChaRng ChaChaRng::fork(u64 tag) const {
  // Child key = first 32 keystream bytes under the parent key with a nonce
  // namespace ("frk\0" in the last word) the parent's own output never uses.
  u32 nonce[3] = {u32(tag), u32(tag >> 32), 0x66726b00};
  u8 out[64];
  block_raw(key_, 0, nonce, out);
  ChaChaRng child;
  for (int i = 0; i < 8; ++i) {
    child.key_[i] = u32(out[4 * i]) | u32(out[4 * i + 1]) << 8 |
                    u32(out[4 * i + 2]) << 16 | u32(out[4 * i + 3]) << 24;
  }
  return child;
}

void ChaChaRng::refill() {
  block_raw(key_, counter_, nonce_, buf_);
  ++counter_;
  require(counter_ != 0, "ChaChaRng: stream exhausted");
  pos_ = 0;
}

void ChaChaRng::fill_bytes(u8* out, std::size_t n) {
  while (n > 0) {
    if (pos_ == 64) refill();
    std::size_t take = 64 - pos_;
    if (take > n) take = n;
    for (std::size_t i = 0; i < take; ++i) out[i] = buf_[pos_ + i];
    pos_ += unsigned(take);
    out += take;
    n -= take;
  }
}

u64 ChaChaRng::next_u64() {
  u8 b[8];
  fill_bytes(b, 8);
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

u128 ChaChaRng::next_u128() {
  u64 lo = next_u64();
  u64 hi = next_u64();
  return (u128(hi) << 64) | lo;
}

u64 ChaChaRng::below(u64 bound) {
  require(bound > 0, "below: zero bound");
  if ((bound & (bound - 1)) == 0) return next_u64() & (bound - 1);
  u64 rem = u64((u128(1) << 64) % bound);
  u64 limit = u64(0) - rem;  // largest multiple of bound that fits
  for (;;) {
    u64 x = next_u64();
    if (x < limit) return x % bound;
  }
}

u128 ChaChaRng::below_u128(u128 bound) {
  require(bound > 0, "below_u128: zero bound");
  if ((bound & (bound - 1)) == 0) return next_u128() & (bound - 1);
  u128 rem = wide::mod(wide::make(1, 0), bound);  // 2^128 mod bound
  u128 limit = u128(0) - rem;
  for (;;) {
    u128 x = next_u128();
    if (x < limit) return x % bound;
  }
}

std::string to_string_u128(u128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x > 0) {
    s.push_back(char('0' + int(x % 10)));
    x /= 10;
  }
  return {s.rbegin(), s.rend()};
}

std::string to_string_i128(i128 x) {
  if (x < 0) return "-" + to_string_u128(u128(0) - u128(x));
  return to_string_u128(u128(x));
}

u128 parse_u128(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer");
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw ParseError("bad digit in integer: " + s);
    u128 d = u128(c - '0');
    if (v > (~u128(0) - d) / 10) throw ParseError("integer overflow: " + s);
    v = v * 10 + d;
  }
  return v;
}

}  // namespace lpvss
