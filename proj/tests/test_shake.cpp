#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpvss/shake.hpp"

using namespace lpvss;

namespace {

std::string hex(const std::vector<u8>& v) {
  static const char* d = "0123456789abcdef";
  std::string s;
  for (u8 b : v) {
    s.push_back(d[b >> 4]);
    s.push_back(d[b & 15]);
  }
  return s;
}

std::vector<u8> bytes_of(const std::string& s) {
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("shake256 known answers") {
  CHECK(hex(Shake256::digest({}, 32)) ==
        "46b9dd2b0ba88d13233b3feb743eeb243fcd52ea62b81b82b50c27646ed5762f");
  CHECK(hex(Shake256::digest(bytes_of("lpvss"), 32)) ==
        "8e83a8609eb7d07de4e6fa8540d9f67d146e9b5ead0a43d3249f48f5b4d6d6a1");
  CHECK(hex(Shake256::digest(std::vector<u8>(200, 0xa3), 32)) ==
        "cd8a920ed141aa0407a22d59288652e9d9f1a7ee0c1e7c1ca699424da84a904d");
  std::vector<u8> long_msg;
  for (int r = 0; r < 3; ++r) {
    for (int i = 0; i < 256; ++i) long_msg.push_back(u8(i));
  }
  CHECK(hex(Shake256::digest(long_msg, 32)) ==
        "2c08d3827f9ced84c8263c16ac1d877a70eff56c86a63d3a701ea8cea0ef0b3b");
}

TEST_CASE("incremental absorb equals one-shot") {
  std::vector<u8> msg;
  for (int i = 0; i < 500; ++i) msg.push_back(u8(i * 7 + 3));
  auto ref = Shake256::digest(msg, 48);
  for (std::size_t chunk : {std::size_t(1), std::size_t(7), std::size_t(135),
                            std::size_t(136), std::size_t(137)}) {
    Shake256 s;
    for (std::size_t off = 0; off < msg.size(); off += chunk) {
      std::size_t take = std::min(chunk, msg.size() - off);
      s.absorb(msg.data() + off, take);
    }
    s.finalize();
    std::vector<u8> out(48);
    s.squeeze(out.data(), 48);
    CHECK(hex(out) == hex(ref));
  }
}

TEST_CASE("chunked squeeze matches stream tail") {
  Shake256 s;
  s.finalize();
  std::vector<u8> out(232);
  for (std::size_t off = 0; off < out.size(); off += 13) {
    s.squeeze(out.data() + off, std::min<std::size_t>(13, out.size() - off));
  }
  std::vector<u8> tail(out.begin() + 200, out.end());
  CHECK(hex(tail) ==
        "4b099f8e300f01b8650f1f4b1d8fcf3f3cb53fb8e9eb2ea203bdc970f50ae554");
}

TEST_CASE("sponge mode misuse throws") {
  Shake256 s;
  s.finalize();
  CHECK_THROWS_AS(s.absorb_str("x"), LogicError);
  Shake256 t;
  u8 b;
  CHECK_THROWS_AS(t.squeeze(&b, 1), LogicError);
}
