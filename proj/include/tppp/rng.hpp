#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tppp {

// Seeded random stream. Replicate i of a run gets its own stream derived
// from (seed, i), so results do not depend on how replicates are
// scheduled across threads.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        // splitmix64 mix of (seed, index)
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return Rng(z);
    }

    // uniform on the open interval (0,1)
    double uniform() { return ((eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    double normal() {
        return std::sqrt(2.0 * exponential()) * std::cos(2 * M_PI * uniform());
    }

    // exact Poisson sample by exponential inter-arrival counting
    int poisson(double mean) {
        int k = 0;
        double acc = exponential();
        while (acc < mean) {
            ++k;
            acc += exponential();
        }
        return k;
    }

    // lognormal with mean 1 and variance sigma^2
    double lognormal_mean1(double sigma) {
        if (sigma <= 0) return 1.0;
        double s2 = std::log1p(sigma * sigma);
        return std::exp(-0.5 * s2 + std::sqrt(s2) * normal());
    }

  private:
    std::mt19937_64 eng_;
};

// E[nu^q] for the mean-1 lognormal shadowing mark with variance sigma^2.
inline double lognormal_mean1_moment(double sigma, double q) {
    if (sigma <= 0) return 1.0;
    double s2 = std::log1p(sigma * sigma);
    return std::exp(-0.5 * s2 * q + 0.5 * q * q * s2);
}

} // namespace tppp
