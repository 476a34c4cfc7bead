#ifndef ACF_RNG_HPP
#define ACF_RNG_HPP

#include <cstdint>
#include <random>

namespace acf {

/**
 * splitmix64 step; used to whiten seeds and derive independent streams from
 * (seed, task, index) tuples.
 */
inline uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/** Hash a tuple of words into one well-mixed 64-bit seed. */
inline uint64_t mix_seed(uint64_t a, uint64_t b = 0, uint64_t c = 0, uint64_t d = 0) {
    uint64_t s = a;
    uint64_t out = splitmix64(s);
    s ^= b + 0x9e3779b97f4a7c15ULL;
    out ^= splitmix64(s);
    s ^= c + 0x7f4a7c159e3779b9ULL;
    out ^= splitmix64(s);
    s ^= d + 0x2545f4914f6cdd1dULL;
    out ^= splitmix64(s);
    return out;
}

/**
 * Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
 * the standard fully specifies) but draws bounded integers and doubles with
 * hand-rolled, implementation-independent mappings, so identical seeds give
 * identical results on every platform and standard library.
 */
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    /** Stream for a subtask, decorrelated from sibling streams. */
    static Rng derive(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
        return Rng(mix_seed(seed, a, b, c));
    }

    uint64_t next() { return engine_(); }

    /** Uniform integer in [0, bound); bound >= 1. Unbiased via rejection. */
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound; // 2^64 mod bound
        for (;;) {
            const uint64_t r = engine_();
            if (r >= threshold)
                return r % bound;
        }
    }

    /** Uniform double in [0, 1) with 53 random bits. */
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace acf

#endif
