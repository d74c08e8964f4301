#ifndef PI1_SAMPLING_HPP
#define PI1_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include "pi1/multipoly.hpp"
#include "pi1/series.hpp"

namespace pi1 {

// splitmix64: tiny, deterministic, and good enough for seeded trials.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    long range(long lo, long hi) {  // inclusive bounds
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

// Signed numerator in ±{1..9}, denominator in {1..4}.
inline Rational sample_rational(SplitMix64& rng) {
    long num = rng.range(1, 9) * (rng.below(2) ? 1 : -1);
    long den = rng.range(1, 4);
    return Rational(num, den);
}

inline Rational sample_rational_nonzero(SplitMix64& rng) { return sample_rational(rng); }

// g pairwise-distinct integer positions: a subset of {1..9} plus a
// common seed-dependent shift.  Generic-position inputs for exact runs.
inline std::vector<Rational> sample_distinct_positions(SplitMix64& rng, int g) {
    long shift = rng.range(-4, 4);
    std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<Rational> out;
    for (int i = 0; i < g; ++i) {
        std::size_t k = static_cast<std::size_t>(rng.below(pool.size()));
        out.emplace_back(pool[k] + shift);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return out;
}

inline MultiPoly sample_poly(SplitMix64& rng, const std::vector<Atom>& atoms, int max_terms,
                             int max_exp) {
    MultiPoly p;
    long terms = rng.range(1, max_terms);
    for (long t = 0; t < terms; ++t) {
        Monomial m;
        for (const Atom& a : atoms)
            if (rng.below(2)) m = Monomial::mul(m, Monomial(a, static_cast<int>(rng.range(1, max_exp))));
        p += MultiPoly::term(m, sample_rational(rng));
    }
    return p;
}

inline LambdaSeries sample_series(SplitMix64& rng, const std::vector<Atom>& atoms, int top2,
                                  int low2) {
    LambdaSeries s;
    for (int e = top2; e >= low2; --e) {
        if (rng.below(3) == 0) continue;
        s += LambdaSeries::monomial2(e, sample_poly(rng, atoms, 2, 2));
    }
    return s.truncated2(low2);
}

}  // namespace pi1

#endif
