#pragma once

#include <cmath>
#include <cstdint>

namespace nomasim {

// splitmix64 step; used for seeding and for counter-based stream derivation.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ generator. Hand-rolled sampling on top so that streams are a
// pure function of the seed bits regardless of the standard library build.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on [0,b).
    double uniform(double b) { return b * uniform(); }

    // Unit-mean exponential (Rayleigh fading power).
    double exponential() { return -std::log1p(-uniform()); }

    // Poisson count by exponential inter-arrival accumulation; exact for the
    // modest means used here (window point counts).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        double sum = 0.0;
        int count = -1;
        do {
            sum += exponential();
            ++count;
        } while (sum < mean);
        return count;
    }

    // Uniform point on the disk of given radius centered at the origin.
    void disk_point(double radius, double& x, double& y) {
        const double r = radius * std::sqrt(uniform());
        const double angle = 6.283185307179586476925286766559 * uniform();
        x = r * std::cos(angle);
        y = r * std::sin(angle);
    }

private:
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
    uint64_t state_[4];
};

// Independent stream for one trial; a pure function of (master_seed, index) so
// any trial is reproducible in isolation and across worker counts.
inline Rng trial_rng(uint64_t master_seed, uint64_t trial_index) {
    uint64_t sm = master_seed ^ (0x6a09e667f3bcc909ULL + trial_index * 0x9e3779b97f4a7c15ULL);
    return Rng(splitmix64(sm));
}

}  // namespace nomasim
