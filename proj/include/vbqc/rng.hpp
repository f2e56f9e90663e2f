#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>

namespace vbqc {

// Counter-based PRNG (Philox4x64-10). Every consumer gets its own stream via
// the (seed, stream) key, so draws are reproducible regardless of execution
// order or thread count: stream k always yields the same sequence.
class PhiloxRng {
 public:
  PhiloxRng(std::uint64_t seed, std::uint64_t stream)
      : key_{seed, stream} {}

  // Raw 10-round block function, exposed for known-answer tests.
  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 4>& counter,
      const std::array<std::uint64_t, 2>& key) {
    constexpr std::uint64_t kM0 = 0xD2E7470EE14C6C93ull;
    constexpr std::uint64_t kM1 = 0xCA5A826395121157ull;
    constexpr std::uint64_t kW0 = 0x9E3779B97F4A7C15ull;
    constexpr std::uint64_t kW1 = 0xBB67AE8584CAA73Bull;
    std::array<std::uint64_t, 4> c = counter;
    std::array<std::uint64_t, 2> k = key;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        k[0] += kW0;
        k[1] += kW1;
      }
      const auto p0 = mulhilo(kM0, c[0]);
      const auto p1 = mulhilo(kM1, c[2]);
      c = {p1.first ^ c[1] ^ k[0], p1.second, p0.first ^ c[3] ^ k[1], p0.second};
    }
    return c;
  }

  std::uint64_t next_u64() {
    if (pos_ == 4) {
      buf_ = block({counter_, 0, 0, 0}, key_);
      ++counter_;
      pos_ = 0;
    }
    return buf_[pos_++];
  }

  // Uniform double in [0, 1), 53-bit mantissa.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Exact (bias-free) for the power-of-two ranges
  // used by the protocol; n must divide 2^64 evenly.
  std::uint32_t next_uint(std::uint32_t n) {
    if (n == 0 || (n & (n - 1)) != 0) {
      throw std::invalid_argument("PhiloxRng::next_uint: range must be a power of two");
    }
    using u128 = unsigned __int128;
    return static_cast<std::uint32_t>((u128(next_u64()) * n) >> 64);
  }

  int next_bit() { return static_cast<int>(next_uint(2)); }

  // Uniform double in [-halfwidth, +halfwidth].
  double next_symmetric(double halfwidth) {
    return (2.0 * next_double() - 1.0) * halfwidth;
  }

 private:
  static std::pair<std::uint64_t, std::uint64_t> mulhilo(std::uint64_t a,
                                                         std::uint64_t b) {
    using u128 = unsigned __int128;
    const u128 p = u128(a) * u128(b);
    return {static_cast<std::uint64_t>(p >> 64), static_cast<std::uint64_t>(p)};
  }

  std::array<std::uint64_t, 2> key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> buf_{};
  int pos_ = 4;
};

}  // namespace vbqc
