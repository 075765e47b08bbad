#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace tracewick {

// Philox4x32-10 counter-based generator (Salmon et al. constants).  A single
// block maps (key, counter) -> 4 independent 32-bit words, so any point of the
// stream can be generated without sequencing through earlier draws.
std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key);

// One logical substream of the generator.  The 128-bit Philox counter is laid
// out as (block_lo, block_hi, stream, sample): the 64-bit seed is the key, the
// (sample, stream) pair picks an independent substream, and the 64-bit block
// index advances as the stream is consumed.  Two streams with different
// (sample, stream) never overlap, which is what makes worker partitions of the
// sample range bit-identical to a serial run.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t sample);

  std::uint32_t next_u32();

  // Uniform on (0, 1]: (x + 1) * 2^-32.  Never returns 0, so logs are finite.
  double next_unit();

  // Standard complex Gaussian, E|Z|^2 = 1: sqrt(-ln u1) * exp(2*pi*i*u2).
  // Consumes exactly two 32-bit words.
  std::complex<double> next_complex_gaussian();

  // Standard real Gaussian N(0,1) via Box-Muller; the partner variate is
  // cached, so a pair of calls consumes two 32-bit words.
  double next_real_gaussian();

  // Fourth-moment-matched entry: Z = r * exp(i*theta) with theta uniform and
  // r^2 equal to 0 or 2 with probability 1/2 each, so E|Z|^2 = 1, E|Z|^4 = 2,
  // and all phase moments vanish.  Consumes exactly two 32-bit words.
  std::complex<double> next_fourth_matched();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_ = 0;
  std::uint32_t sample_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int position_ = 4;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace tracewick
