#include "tracewick/rng.hpp"

#include <cmath>

namespace tracewick {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kInv32 = 1.0 / 4294967296.0;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t prod0 = static_cast<std::uint64_t>(kMult0) * ctr[0];
  const std::uint64_t prod1 = static_cast<std::uint64_t>(kMult1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(prod0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(prod0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(prod1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(prod1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(const std::array<std::uint32_t, 4>& counter,
                                        const std::array<std::uint32_t, 2>& key) {
  std::array<std::uint32_t, 4> ctr = counter;
  std::array<std::uint32_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    if (round != 0) {
      k[0] += kWeyl0;
      k[1] += kWeyl1;
    }
    philox_round(ctr, k);
  }
  return ctr;
}

RngStream::RngStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t sample)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream),
      sample_(sample) {}

void RngStream::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
      stream_, sample_};
  buffer_ = philox4x32(counter, key_);
  ++block_;
  position_ = 0;
}

std::uint32_t RngStream::next_u32() {
  if (position_ == 4) refill();
  return buffer_[position_++];
}

double RngStream::next_unit() {
  return (static_cast<double>(next_u32()) + 1.0) * kInv32;
}

std::complex<double> RngStream::next_complex_gaussian() {
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-std::log(u1));
  const double angle = kTwoPi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RngStream::next_real_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double u1 = next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = kTwoPi * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RngStream::next_fourth_matched() {
  const std::uint32_t bit_word = next_u32();
  const double u2 = next_unit();
  const double radius = (bit_word >> 31) ? 1.4142135623730950488016887242097 : 0.0;
  const double angle = kTwoPi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace tracewick
