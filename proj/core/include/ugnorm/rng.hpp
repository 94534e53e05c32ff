#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ugnorm {

// Substream ids used by the game engine. One master seed plus a stream id
// fully determines a stream, so varying one component of an experiment
// never shifts the draws of another.
enum class Stream : std::uint32_t {
  population = 1,
  proposer_norm = 2,
  responder_norm = 3,
  session = 4,
};

// Deterministic random stream. Uniform and normal draws are generated from
// raw mt19937_64 output (no std::*_distribution), so sequences are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, Stream stream = Stream::population) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    gen_.seed(seq);
  }

  // [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal(double mu, double sigma) {
    // Box-Muller, one fresh pair per draw: fixed stream layout.
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
    const double u2 = uniform01();
    constexpr double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ugnorm
