#pragma once

#include <cstdint>

namespace maternpar {

/// Philox4x32-10 counter-based generator. Streams are addressed by
/// (seed, stream): the seed fills the key, the stream id the high counter
/// words, so replicate substreams never overlap and draws are independent of
/// scheduling order. Uniforms use 53-bit mantissas; normals are Box-Muller.
class RngStream {
public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();                    // (0, 1)
  double uniform(double a, double b);  // (a, b)
  double normal();                     // standard normal

private:
  void refill();
  std::uint32_t key_[2];
  std::uint32_t ctr_hi_[2];
  std::uint64_t counter_ = 0;
  std::uint32_t block_[4];
  int avail_ = 0;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

/// Stable substream id for replicate studies: replicate index plus a purpose
/// tag (locations / field draws / holdout mask ...).
std::uint64_t substream(std::uint64_t replicate, std::uint64_t purpose);

} // namespace maternpar
