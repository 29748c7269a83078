#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fmeasure {

// SplitMix64 finalizer (Steele, Lea & Flood).  Used only for seed mixing.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent stream seed from (base, stream).  Deterministic, so
// parallel trials seeded per index reproduce the sequential run exactly.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Deterministic random source.  The generator is std::mt19937_64, whose
// output sequence is fully specified by the standard; uniforms take the top
// 53 bits, and normal variates use the Box-Muller transform.  This keeps
// sampled datasets reproducible from the seed alone, independent of the
// standard library's (unspecified) distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on (0, 1]; never returns 0, so log(uniform()) is always finite.
  double uniform() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() <= p; }

  // Standard normal via Box-Muller; the second variate of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double pi = 3.14159265358979323846;
    double u1 = uniform();
    double u2 = uniform();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::uint64_t next_u64() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fmeasure
