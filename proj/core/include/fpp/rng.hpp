#pragma once

#include <array>
#include <cstdint>

namespace fpp {

// Fixed-increment SplittableRandom step (Vigna's splitmix64). Used both as a
// reference-vectored generator and as the seed expander for xoshiro256++.
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ 1.0. All Monte Carlo streams in the project are instances of
/// this generator; the state layout and outputs are platform-independent.
class Xoshiro256PlusPlus {
public:
    explicit Xoshiro256PlusPlus(uint64_t seed64) {
        SplitMix64 sm(seed64);
        for (auto& w : s_) w = sm.next();
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    uint64_t operator()() { return next(); }

    /// Unbiased uniform draw from {0, .., bound-1} by rejection.
    uint64_t below(uint64_t bound) {
        // largest multiple of bound representable in 64 bits
        const uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % bound;
        uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::array<uint64_t, 4> s_{};
};

/// Counter-based per-sample stream: state is the splitmix64 expansion of
/// (master XOR mix(index)). Distinct (master, index) pairs give independent
/// streams; the derivation is pure, so samples can run in any order or in
/// parallel with identical results.
inline Xoshiro256PlusPlus derive_stream(uint64_t master, uint64_t index) {
    const uint64_t mixed = SplitMix64(index).next();
    return Xoshiro256PlusPlus(master ^ mixed);
}

}  // namespace fpp
