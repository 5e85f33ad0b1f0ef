#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace hcube {

/// Philox4x32-10 block function (Salmon et al., Random123). Maps a 128-bit
/// counter and 64-bit key to 128 pseudorandom bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based generator: sample i of substream `stream` under `seed` is a
/// pure function of (seed, stream, i), so identical triples give identical
/// draws on every platform. Satisfies UniformRandomBitGenerator.
///
/// Layout: key = seed, counter = (block_lo, block_hi, stream_lo, stream_hi);
/// each block yields two 64-bit outputs.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal by Box-Muller (pairs cached).
  double normal();
  /// Uniform integer in [0, bound). bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// +1 or -1 with equal probability.
  int sign() { return (operator()() >> 63) ? -1 : 1; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  /// Number of 64-bit outputs consumed so far.
  std::uint64_t position() const { return position_; }

  /// Jump to an absolute output position within this substream.
  void seek(std::uint64_t position);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  bool buffer_valid_ = false;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Derives a child stream id from a parent stream and an index (grid point,
/// restart number, ...). Deterministic and platform independent.
std::uint64_t derive_stream(std::uint64_t parent, std::uint64_t index);

}  // namespace hcube
