#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace kcbs {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11). Output is
/// a pure function of (counter, key), so any trial's randomness can be
/// regenerated without replaying earlier trials.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// Random stream for one trial, keyed by (seed, trial index). Draws come
/// from successive Philox blocks: counter = (trial lo, trial hi, block, 0).
class TrialStream {
public:
  TrialStream(std::uint64_t seed, std::uint64_t trial) noexcept;

  std::uint32_t next_u32() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double next_double() noexcept;
  /// Uniform on {0, ..., n-1}, n >= 1; unbiased (Lemire's method).
  std::uint32_t next_below(std::uint32_t n) noexcept;

private:
  void refill() noexcept;

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  Philox4x32::Counter block_{};
  std::size_t used_ = 4;
};

}  // namespace kcbs
