#pragma once

// Deterministic random streams. Everything in the library draws randomness
// through RngStream so that a master seed plus a stream index reproduces a
// run bit-for-bit on any platform; std::random distributions are avoided on
// purpose (their sequences are implementation-defined).

#include <cmath>
#include <cstdint>

namespace htester {

// SplitMix64: used for seeding, stream derivation and stateless hashing.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Order-sensitive combine: hash_u64(a, b) != hash_u64(b, a) in general.
inline std::uint64_t hash_u64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ 0x6a09e667f3bcc909ULL;
  std::uint64_t h = splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return splitmix64(s);
}

inline std::uint64_t hash_u64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return hash_u64(hash_u64(a, b), c);
}

// xoshiro256++ with a polar-method normal generator.
class RngStream {
 public:
  RngStream() : RngStream(0) {}

  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  // Splittable streams: (master, index) -> independent stream.
  static RngStream derive(std::uint64_t master, std::uint64_t index) {
    return RngStream(hash_u64(master, index));
  }
  static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return RngStream(hash_u64(master, a, b));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double uniform_sym() { return double(std::int64_t(next_u64()) >> 10) * 0x1.0p-53; }

  // Standard normal via Marsaglia's polar method (one spare cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_sym();
      v = uniform_sym();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace htester
