#pragma once

#include <complex>
#include <cstdint>
#include <string>

namespace bogctilt {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream name, counter), so parallel suites sample identical values
/// regardless of scheduling. The mixer is splitmix64.
class RngStream {
 public:
  RngStream(std::uint64_t seed, const std::string& stream_name) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the stream name
    for (unsigned char c : stream_name) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
    base_ = seed ^ h;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = base_ + (++counter_) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  double uniform() {  // [0, 1) with 53 random bits
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::complex<double> uniform_complex_square(double half_side) {
    double re = uniform(-half_side, half_side);
    double im = uniform(-half_side, half_side);
    return {re, im};
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace bogctilt
