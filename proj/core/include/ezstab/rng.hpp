#pragma once

#include <cstdint>
#include <random>

namespace ezstab {

// splitmix64 finalizer; full-period bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed derivation. Streams for distinct (a) or (a, b) are
// independent of each other and of scheduling, so parallel and serial runs
// consume identical randomness.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t a) {
  return mix64(mix64(master) ^ mix64(a * 0xd6e8feb86659fd93ULL + 1));
}

inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  return split_seed(split_seed(master, a), b);
}

// Per-stream generator. One instance per simulated path; never shared.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return unif_(eng_); }
  double normal() { return norm_(eng_); }

  // Standard normal clipped to [-clip, clip]; clip = inf leaves draws as-is.
  double normal_clipped(double clip) {
    double z = norm_(eng_);
    if (z > clip) return clip;
    if (z < -clip) return -clip;
    return z;
  }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> norm_{0.0, 1.0};
  std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

}  // namespace ezstab
