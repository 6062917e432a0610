#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace csqf {

// Deterministic counter-free PRNG (xoshiro256** seeded via splitmix64).
// Everything randomized in this project draws through Rng so that a given
// seed produces bit-identical artifacts regardless of platform or standard
// library version. Named streams decouple unrelated random choices: tweaking
// one knob must not reshuffle the draws of another.
class Rng {
 public:
  explicit Rng(uint64_t seed) { seed_state(seed); }

  Rng(uint64_t seed, std::string_view stream) {
    seed_state(seed ^ fnv1a(stream));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // [0, bound), bound >= 1. Lemire multiply-shift reduction.
  uint64_t uniform_u64(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
  }

  // Inclusive range.
  int64_t uniform_int(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(
                    uniform_u64(static_cast<uint64_t>(hi - lo) + 1));
  }

  // [lo, hi)
  double uniform_real(double lo, double hi) {
    const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }

  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform_u64(v.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = uniform_u64(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  static uint64_t fnv1a(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  void seed_state(uint64_t seed) {
    uint64_t z = seed;
    for (auto& word : s_) {
      z += 0x9e3779b97f4a7c15ull;
      uint64_t w = z;
      w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ull;
      w = (w ^ (w >> 27)) * 0x94d049bb133111ebull;
      word = w ^ (w >> 31);
    }
  }

  uint64_t s_[4];
};

}  // namespace csqf
