#pragma once

// SHAKE256 extendable-output function (FIPS 202), self-contained.  Used as
// the byte oracle behind non-interactive challenge derivation and anchored
// by known-answer tests.  Incremental absorb/squeeze sponge.

#include <vector>

#include "lpvss/common.hpp"

namespace lpvss {

class Shake256 {
 public:
  void absorb(const u8* data, std::size_t n);
  void absorb(const std::vector<u8>& data) {
    absorb(data.data(), data.size());
  }
  void absorb_str(const std::string& s) {
    absorb(reinterpret_cast<const u8*>(s.data()), s.size());
  }

  // Switches the sponge to squeezing; absorbing afterwards is an error.
  void finalize();
  void squeeze(u8* out, std::size_t n);

  static std::vector<u8> digest(const std::vector<u8>& data,
                                std::size_t outlen);

 private:
  void permute();

  u64 st_[25] = {};
  unsigned pos_ = 0;
  bool squeezing_ = false;
};

}  // namespace lpvss
