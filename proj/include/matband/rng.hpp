#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace matband {

/// Deterministic uniform/gaussian draws on top of mt19937_64. The
/// distributions are hand-rolled (53-bit uniform, Box-Muller) instead of
/// <random>'s because stdlib distribution output is implementation-defined
/// and the CLI promises byte-identical output for a given --seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace matband
