#ifndef CIVHS_RNG_HPP
#define CIVHS_RNG_HPP

#include <cstdint>
#include "civhs/rational.hpp"

namespace civhs {

// splitmix64; self-contained so seeded runs are byte-identical across
// platforms and standard libraries.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    long int_in(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // numerator in [-num_bound, num_bound], denominator in [1, den_bound]
    Rat rat_in_box(long num_bound, long den_bound) {
        return rat(int_in(-num_bound, num_bound), int_in(1, den_bound));
    }

    Rat nonzero_rat_in_box(long num_bound, long den_bound) {
        for (;;) {
            Rat r = rat_in_box(num_bound, den_bound);
            if (sgn(r) != 0) return r;
        }
    }
};

}  // namespace civhs

#endif
