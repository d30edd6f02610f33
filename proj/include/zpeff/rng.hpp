#pragma once

#include <cmath>
#include <cstdint>

namespace zpeff {

// Deterministic splitmix64 generator. Used instead of <random> engines and
// distributions so that seeded outputs are bit-identical across platforms
// and standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1): 53-bit mantissa offset by half an ulp
  // so neither endpoint can occur.
  double uniform01() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double exponential() { return -std::log(uniform01()); }

  bool coin() { return (next_u64() & 1ULL) != 0; }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

  // Deterministic sub-seed for (stream, index) pairs, so independent trials
  // can run in any order or in parallel with identical results.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    Rng mix(seed ^ (0x632be59bd9b4e019ULL * (stream + 1)) ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    mix.next_u64();
    return mix.next_u64();
  }

 private:
  std::uint64_t state_;
};

}  // namespace zpeff
