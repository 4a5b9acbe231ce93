#pragma once

// Small conversion and concatenation helpers shared by the three argument
// implementations; not part of the public surface.

#include <vector>

#include "lpvss/modmath.hpp"

namespace lpvss::sigma_detail {

inline std::vector<u128> to_res(const Modulus& m, const std::vector<i128>& x) {
  std::vector<u128> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = from_centered(x[i], m.q);
  return out;
}

inline std::vector<u128> reduce_vec(const Modulus& m,
                                    const std::vector<u128>& x) {
  std::vector<u128> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = m.reduce(x[i]);
  return out;
}

inline std::vector<i128> center_vec(const Modulus& m,
                                    const std::vector<u128>& x) {
  std::vector<i128> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = center_lift(m.reduce(x[i]), m.q);
  return out;
}

// dst += src entries at the end (bundling concatenations).
inline void append(std::vector<i128>& dst, const std::vector<i128>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

// a + c*b over the integers, c in {0, 1}.
inline std::vector<i128> add_scaled(const std::vector<i128>& a,
                                    const std::vector<i128>& b, unsigned c) {
  require(a.size() == b.size(), "add_scaled: length mismatch");
  std::vector<i128> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + (c ? b[i] : i128(0));
  return out;
}

}  // namespace lpvss::sigma_detail
