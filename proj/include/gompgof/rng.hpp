#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gompgof {

/// Philox4x32-10 block function (Salmon et al., SC'11). Maps a 128-bit counter
/// and a 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Combines two 64-bit values into a well-mixed seed (SplitMix64 finaliser).
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Counter-based random stream. A stream is identified by (seed, stream id);
/// draw i of that stream depends only on (seed, stream id, i), so independent
/// work units can each own a stream and run in any order.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1); 53-bit resolution, never 0 or 1.
  double uniform();

  /// Standard normal via the Box-Muller transform (pairs are cached).
  double normal();

  /// Standard exponential, -log(U).
  double exponential();

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;  // u32 words of buffer_ consumed
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace gompgof
