#pragma once

#include <cmath>
#include <cstdint>

namespace nlh {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so parallel consumers can partition counter
// ranges and runs are bit-reproducible regardless of call interleaving.
// Mixing core is the splitmix64 finalizer applied to a combined key.
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static uint64_t at(uint64_t seed, uint64_t stream, uint64_t counter) {
        uint64_t k = mix(seed);
        k = mix(k ^ (stream * 0xd1342543de82ef95ULL + 1));
        return mix(k ^ counter);
    }

    uint64_t next_u64() { return at(seed_, stream_, counter_++); }

    // Uniform in (0,1): top 53 bits, offset by half an ulp so 0 is excluded
    // (log() of the result is always finite).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    // Marsaglia polar method; caches the second variate.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    uint64_t counter() const { return counter_; }
    void set_counter(uint64_t c) { counter_ = c; have_spare_ = false; }

  private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace nlh
