#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpvss {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Invalid or inconsistent configuration (parameter sets, CLI flags, file
// contents that parse but violate a constraint).
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Input bytes that cannot even be parsed (truncated files, bad hex, wrong
// magic / version).
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};

// A randomized procedure exhausted its retry budget (rejection sampling,
// proof restarts).  Indicates parameters far outside their design range.
struct SamplingError : std::runtime_error {
  explicit SamplingError(const std::string& m) : std::runtime_error(m) {}
};

// An internal contract was violated.  Never expected on any input that
// reaches the public API through documented call sequences.
struct LogicError : std::logic_error {
  explicit LogicError(const std::string& m) : std::logic_error(m) {}
};

// A documented precondition of the called routine does not hold (e.g. asking
// the dealer-side challenge analyzer to run against unsound receiver keys).
struct PreconditionError : std::logic_error {
  explicit PreconditionError(const std::string& m) : std::logic_error(m) {}
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw LogicError(msg);
}

// Decimal rendering for 128-bit integers (iostreams cannot print them).
std::string to_string_u128(u128 x);
std::string to_string_i128(i128 x);
u128 parse_u128(const std::string& s);  // decimal, throws ParseError

}  // namespace lpvss
