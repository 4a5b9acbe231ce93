#pragma once

// Deterministic random streams for sampling and test harnesses: ChaCha20
// (RFC 8439) keystream keyed from a 64-bit seed, with a fork() operation
// that derives an independent child stream from a tag.  Forking never
// consumes parent output, so the stream a component sees depends only on
// its path of tags from the root, not on evaluation order elsewhere.
//
// This is a reproducibility PRNG for a reference implementation; treat the
// seed, not the stream, as the secret in any deployment discussion.

#include "lpvss/common.hpp"

namespace lpvss {

class ChaChaRng {
 public:
  explicit ChaChaRng(u64 seed);

  // Independent child stream determined by (this stream's key, tag).
  ChaChaRng fork(u64 tag) const;

  void fill_bytes(u8* out, std::size_t n);
  u64 next_u64();
  u128 next_u128();

  // Uniform in [0, bound) by rejection; bound > 0.
  u64 below(u64 bound);
  u128 below_u128(u128 bound);  // recomputes its threshold; cold paths only

  // One raw keystream block, exposed so known-answer tests can pin the
  // exact RFC 8439 block function.
  static void block_raw(const u32 key[8], u32 counter, const u32 nonce[3],
                        u8 out[64]);

 private:
  ChaChaRng() = default;
  void refill();

  u32 key_[8] = {};
  u32 nonce_[3] = {};
  u32 counter_ = 0;
  u8 buf_[64] = {};
  unsigned pos_ = 64;  // 64 = buffer empty
};

}  // namespace lpvss
