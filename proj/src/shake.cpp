#include "lpvss/shake.hpp"

namespace lpvss {

namespace {

constexpr unsigned kRate = 136;  // SHAKE256 rate in bytes (capacity 512)

constexpr u64 kRoundConst[24] = {
    0x0000000000000001ull, 0x0000000000008082ull, 0x800000000000808aull,
    0x8000000080008000ull, 0x000000000000808bull, 0x0000000080000001ull,
    0x8000000080008081ull, 0x8000000000008009ull, 0x000000000000008aull,
    0x0000000000000088ull, 0x0000000080008009ull, 0x000000008000000aull,
    0x000000008000808bull, 0x800000000000008bull, 0x8000000000008089ull,
    0x8000000000008003ull, 0x8000000000008002ull, 0x8000000000000080ull,
    0x000000000000800aull, 0x800000008000000aull, 0x8000000080008081ull,
    0x8000000000008080ull, 0x0000000080000001ull, 0x8000000080008008ull};

// Rotation offsets indexed by lane position x + 5y.
constexpr int kRot[25] = {0,  1,  62, 28, 27,   // y = 0
                          36, 44, 6,  55, 20,   // y = 1
                          3,  10, 43, 25, 39,   // y = 2
                          41, 45, 15, 21, 8,    // y = 3
                          18, 2,  61, 56, 14};  // y = 4

inline u64 rotl64(u64 x, int n) {
  return n == 0 ? x : (x << n) | (x >> (64 - n));
}

}  // namespace

void Shake256::permute() {
  u64* a = st_;
  for (int round = 0; round < 24; ++round) {
    u64 c[5], d[5];
    for (int x = 0; x < 5; ++x) {
      c[x] = a[x] ^ a[x + 5] ^ a[x + 10] ^ a[x + 15] ^ a[x + 20];
    }
    for (int x = 0; x < 5; ++x) {
      d[x] = c[(x + 4) % 5] ^ rotl64(c[(x + 1) % 5], 1);
    }
    for (int i = 0; i < 25; ++i) a[i] ^= d[i % 5];

    u64 b[25];
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 5; ++x) {
        b[y + 5 * ((2 * x + 3 * y) % 5)] = rotl64(a[x + 5 * y], kRot[x + 5 * y]);
      }
    }
    for (int y = 0; y < 5; ++y) {
      for (int x = 0; x < 5; ++x) {
        a[x + 5 * y] = b[x + 5 * y] ^
                       (~b[(x + 1) % 5 + 5 * y] & b[(x + 2) % 5 + 5 * y]);
      }
    }
    a[0] ^= kRoundConst[round];
  }
}

void Shake256::absorb(const u8* data, std::size_t n) {
  require(!squeezing_, "Shake256: absorb after finalize");
  for (std::size_t i = 0; i < n; ++i) {
    st_[pos_ >> 3] ^= u64(data[i]) << (8 * (pos_ & 7));
    if (++pos_ == kRate) {
      permute();
      pos_ = 0;
    }
  }
}

void Shake256::finalize() {
  require(!squeezing_, "Shake256: double finalize");
  st_[pos_ >> 3] ^= u64(0x1f) << (8 * (pos_ & 7));
  st_[(kRate - 1) >> 3] ^= u64(0x80) << (8 * ((kRate - 1) & 7));
  permute();
  pos_ = 0;
  squeezing_ = true;
}

void Shake256::squeeze(u8* out, std::size_t n) {
  require(squeezing_, "Shake256: squeeze before finalize");
  for (std::size_t i = 0; i < n; ++i) {
    if (pos_ == kRate) {
      permute();
      pos_ = 0;
    }
    out[i] = u8(st_[pos_ >> 3] >> (8 * (pos_ & 7)));
    ++pos_;
  }
}

std::vector<u8> Shake256::digest(const std::vector<u8>& data,
                                 std::size_t outlen) {
  Shake256 s;
  s.absorb(data);
  s.finalize();
  std::vector<u8> out(outlen);
  s.squeeze(out.data(), outlen);
  return out;
}

}  // namespace lpvss
