#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace hetpca {

/// SplitMix64 finalizer; the repo-wide seed-mixing primitive.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-trial seed contract: trials are reproducible and order-independent
/// because each (master seed, sweep point, trial) triple maps to its own
/// generator seed.
inline std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t point_index,
                                       std::uint64_t trial_index) {
  return splitmix64(splitmix64(splitmix64(master) ^ point_index) ^
                    (trial_index * 0xD1B54A32D192ED03ULL + 1));
}

/// Deterministic samplers on top of mt19937_64. std::normal_distribution is
/// implementation-defined, so the transforms are spelled out here to keep
/// generated datasets byte-stable across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double gaussian() {  // N(0, 1), Box-Muller with cached second value
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double phi = 2.0 * M_PI * uniform01();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  std::complex<double> gaussian_complex() {  // CN(0, 1): re/im each var 1/2
    const double u = 0.5 * M_SQRT2;
    return {u * gaussian(), u * gaussian()};
  }

  double rademacher() { return (engine_() & 1u) ? 1.0 : -1.0; }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hetpca
