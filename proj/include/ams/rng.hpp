#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace ams::rng {

// Counter-based generator (philox4x32-10). Stateless: every draw is a pure
// function of (seed, stream, index), so results are identical under any
// execution order or degree of parallelism.
struct Philox4x32 {
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                            std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
      const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
      const std::array<std::uint32_t, 4> next = {
          std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
          std::uint32_t(p1),
          std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
          std::uint32_t(p0),
      };
      ctr = next;
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }
};

// Uniform in (0,1), 53 bits from two 32-bit lanes, never exactly 0 or 1.
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
  return double(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Uniform in (0,1) per (seed, stream, index).
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::array<std::uint32_t, 4> ctr = {
      std::uint32_t(index), std::uint32_t(index >> 32),
      std::uint32_t(stream), std::uint32_t(stream >> 32)};
  const std::array<std::uint32_t, 2> key = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
  const auto w = Philox4x32::block(ctr, key);
  return to_unit(w[0], w[1]);
}

// One standard normal per (seed, stream, index) via Box-Muller.
inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  const std::array<std::uint32_t, 4> ctr = {
      std::uint32_t(index), std::uint32_t(index >> 32),
      std::uint32_t(stream), std::uint32_t(stream >> 32)};
  const std::array<std::uint32_t, 2> key = {std::uint32_t(seed), std::uint32_t(seed >> 32)};
  const auto w = Philox4x32::block(ctr, key);
  const double u1 = to_unit(w[0], w[1]);
  const double u2 = to_unit(w[2], w[3]);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ams::rng
