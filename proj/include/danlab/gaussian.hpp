#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "danlab/scalar.hpp"

namespace danlab {

// Deterministic RNG: one master seed fully determines every stream.
// Substreams are derived from (seed, tag) so independent tasks can draw
// without coordination; the Gaussian is hand-rolled Box-Muller so the
// stream does not depend on the standard library's distribution internals.
class Rng {
  public:
    explicit Rng(uint64_t seed);

    // Independent stream derived from this stream's seed and a tag.
    Rng substream(uint64_t tag) const;

    uint64_t next_u64();
    double uniform01();       // [0, 1)
    double uniform01_open();  // (0, 1]
    double normal();          // standard N(0, 1)
    // standard complex Gaussian: independent N(0,1) real and imaginary parts,
    // so |t| has the Rayleigh density r e^{-r^2/2}
    Complex gaussian();
    // uniform integer in [lo, hi]
    int64_t uniform_int(int64_t lo, int64_t hi);

    uint64_t seed() const { return seed_; }

  private:
    uint64_t seed_;
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0;
};

// gamma({ |t| >= s }) = exp(-s^2/2) for the standard complex Gaussian.
inline double gaussian_tail(double s) { return std::exp(-0.5 * s * s); }

}  // namespace danlab
