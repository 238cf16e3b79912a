#ifndef SFCEM_RNG_H_
#define SFCEM_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace sfcem {

// Seeded random source. Draws are derived from the raw mt19937_64 stream
// with fixed arithmetic so sequences are identical across standard
// libraries (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform in [lo, hi]; returns exactly lo when lo == hi.
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  // Uniform index in [0, n). n must be positive.
  std::size_t Index(std::size_t n);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive independent sub-seeds.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

}  // namespace sfcem

#endif  // SFCEM_RNG_H_
