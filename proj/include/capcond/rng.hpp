#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace capcond {

/// Philox4x64-10 block function: a keyed bijection of 256-bit counters.
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

/// Counter-based random stream. The key is (seed, stream); the counter holds
/// (block, substream). Two streams with the same triple produce the same
/// bits regardless of what other streams have been consumed, so work items
/// may be drawn in any order or on any thread.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  /// Standard normal via the inverse normal CDF of one uniform_open draw.
  double normal();

  std::uint64_t seed() const noexcept { return key_[0]; }
  std::uint64_t stream() const noexcept { return key_[1]; }
  std::uint64_t substream() const noexcept { return substream_; }

private:
  std::array<std::uint64_t, 2> key_;
  std::uint64_t substream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int position_ = 4;
};

} // namespace capcond
