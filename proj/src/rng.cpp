#include "maternpar/rng.hpp"

#include <cmath>

namespace maternpar {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
  const std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  const std::uint32_t n0 = hi1 ^ ctr[1] ^ key[0];
  const std::uint32_t n1 = lo1;
  const std::uint32_t n2 = hi0 ^ ctr[3] ^ key[1];
  const std::uint32_t n3 = lo0;
  ctr[0] = n0;
  ctr[1] = n1;
  ctr[2] = n2;
  ctr[3] = n3;
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  key_[0] = std::uint32_t(seed);
  key_[1] = std::uint32_t(seed >> 32);
  ctr_hi_[0] = std::uint32_t(stream);
  ctr_hi_[1] = std::uint32_t(stream >> 32);
}

void RngStream::refill() {
  std::uint32_t ctr[4] = {std::uint32_t(counter_), std::uint32_t(counter_ >> 32),
                          ctr_hi_[0], ctr_hi_[1]};
  std::uint32_t key[2] = {key_[0], key_[1]};
  for (int r = 0; r < 10; ++r) {
    philox_round(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  block_[0] = ctr[0];
  block_[1] = ctr[1];
  block_[2] = ctr[2];
  block_[3] = ctr[3];
  avail_ = 4;
  ++counter_;
}

std::uint64_t RngStream::next_u64() {
  if (avail_ < 2) refill();
  const std::uint64_t hi = block_[avail_ - 1];
  const std::uint64_t lo = block_[avail_ - 2];
  avail_ -= 2;
  return (hi << 32) | lo;
}

double RngStream::uniform() {
  // 53-bit mantissa, offset by half an ulp so the value is strictly in (0,1).
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
  return a + (b - a) * uniform();
}

double RngStream::normal() {
  if (have_cached_normal_) {
    have_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 6.283185307179586476925286766559 * u2;
  cached_normal_ = r * std::sin(t);
  have_cached_normal_ = true;
  return r * std::cos(t);
}

std::uint64_t substream(std::uint64_t replicate, std::uint64_t purpose) {
  return (replicate << 8) | (purpose & 0xFF);
}

} // namespace maternpar
