#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace enumlab {

/// Thrown when a file is missing or cannot be read/written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a domain constraint is violated (size cap, overflow,
/// infeasible bound). Distinct from malformed input, which throws
/// std::invalid_argument.
struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a worst-case measurement cannot complete within the
/// configured step budget. Never silently capped.
struct MeasurementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a, used for manifest and knowledge-base digests. Not cryptographic;
// digests only tie outputs to the exact inputs that produced them.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

using u128 = unsigned __int128;

inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return {out.rbegin(), out.rend()};
}

inline u128 u128_from_string(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  u128 v = 0;
  constexpr u128 kMax = ~static_cast<u128>(0);
  for (char c : s) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("bad digit in integer literal: " +
                                  std::string(s));
    unsigned d = static_cast<unsigned>(c - '0');
    if (v > (kMax - d) / 10) throw ConstraintError("integer literal overflow");
    v = v * 10 + d;
  }
  return v;
}

}  // namespace enumlab
