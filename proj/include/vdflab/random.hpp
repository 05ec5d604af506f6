#pragma once

#include "wgraph.hpp"

namespace vdflab {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Child seed for stream `index` of `seed`; used as (module id, trial index) derivation.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + kGolden));
}

// Counter-based stream: draw k of stream `seed` is mix64(seed + (k+1)*golden).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next() { return mix64(seed_ + (++counter_) * kGolden); }
  // uniform in [0, bound) by 128-bit multiply-shift
  std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>((u128(next()) * bound) >> 64); }
  double uniform01() { return (next() >> 11) * 0x1.0p-53; }
  bool coin(double p) { return uniform01() < p; }
  std::uint64_t draws() const { return counter_; }

  // std::uniform_random_bit_generator interface
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next(); }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

// Inverse-CDF sampler over the exact integer-scaled cumulative weights:
// vertex i is returned for u (64-bit) iff C_{i-1}*2^64 <= u*L < C_i*2^64.
class Sampler {
 public:
  explicit Sampler(const VertexDistribution& d) {
    d.require_units(std::int64_t(1) << 62, "sampler");
    scale_ = d.scale();
    cum_.resize(d.size());
    u128 c = 0;
    for (int i = 0; i < d.size(); ++i) {
      c += static_cast<u128>(d.unit(i));
      cum_[i] = c << 64;
    }
  }
  int draw(Stream& s) const {
    u128 x = u128(s.next()) * static_cast<u128>(scale_);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), x);
    return static_cast<int>(it - cum_.begin());
  }

 private:
  std::int64_t scale_;
  std::vector<u128> cum_;
};

inline std::vector<int> sample_vertices(const VertexDistribution& d, int s, std::uint64_t seed) {
  if (s < 1) throw InputError("sample size must be >= 1");
  Sampler sampler(d);
  Stream stream(seed);
  std::vector<int> out(s);
  for (auto& v : out) v = sampler.draw(stream);
  return out;
}

}  // namespace vdflab
