#ifndef DECON2D_RNG_HPP
#define DECON2D_RNG_HPP

#include <cstdint>

namespace decon2d {

//! Deterministic counter-based generator: SplitMix64, counter mode, version 1.
//!
//! Output i of a stream with key k is finalize(k + (i+1) * GAMMA), the
//! SplitMix64 sequence of Steele, Lea and Flood (2014) started at state k.
//! Keys are derived from (seed, stream, substream) by chaining the same
//! finalizer, so every observation of every replication owns an
//! independent stream: draws for observation k never move when n or the
//! replication count grows.  Output is identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : state_(key) {}

  //! Key for logical stream (seed, stream, substream).
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t substream = 0) {
    std::uint64_t k = finalize(seed + kGamma);
    k = finalize(k ^ (stream + kGamma));
    k = finalize(k ^ (substream + kGamma));
    return k;
  }

  std::uint64_t next_u64() {
    state_ += kGamma;
    return finalize(state_);
  }

  //! Uniform draw on [0, 1) with 53 random bits.
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace decon2d

#endif
