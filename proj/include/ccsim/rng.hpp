#pragma once

#include <cstdint>
#include <initializer_list>

#include "ccsim/bitvec.hpp"

namespace ccsim {

// splitmix64 stream. Streams are keyed by hashing a tuple of 64-bit words,
// so the values drawn from one stream never depend on what any other stream
// drew or on evaluation order elsewhere in the program.
class Rng {
public:
    explicit Rng(std::initializer_list<uint64_t> key) {
        uint64_t s = 0x243f6a8885a308d3ull;
        for (uint64_t w : key) {
            s = finalize(s ^ finalize(w));
        }
        state_ = s;
    }

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        return finalize_steps(z);
    }

    // Unbiased uniform draw from [0, bound). bound must be > 0.
    uint64_t below(uint64_t bound) {
        auto x = next();
        auto m = static_cast<unsigned __int128>(x) * bound;
        auto lo = static_cast<uint64_t>(m);
        if (lo < bound) {
            uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<unsigned __int128>(x) * bound;
                lo = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

private:
    static uint64_t finalize(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        return finalize_steps(z);
    }
    static uint64_t finalize_steps(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t state_ = 0;
};

// Uniform k-subset of [0, n), Floyd's algorithm. Exactly k bits set.
inline BitVector sample_subset(Rng& rng, int64_t n, int64_t k) {
    assert(k >= 0 && k <= n);
    BitVector out(n);
    for (int64_t i = n - k; i < n; ++i) {
        int64_t r = static_cast<int64_t>(rng.below(static_cast<uint64_t>(i) + 1));
        if (out.test(r))
            out.set(i);
        else
            out.set(r);
    }
    return out;
}

// n iid fair bits.
inline BitVector random_bits(Rng& rng, int64_t n) {
    BitVector out(n);
    for (auto& w : out.words()) w = rng.next();
    out.trim_tail();
    return out;
}

}  // namespace ccsim
