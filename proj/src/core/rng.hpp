#pragma once

#include <cstdint>

namespace lhc {

// splitmix64 (Steele, Lea, Flood 2014). Tiny, fast, and fully specified, so
// every seeded result in this project is reproducible across platforms. We
// deliberately avoid std::mt19937 + distributions: libstdc++/libc++ disagree
// on distribution output, and bit-identical reruns are part of the contract.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound) via rejection; bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~0ULL - ~0ULL % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }

    // One fair bit (top bit of the next word: splitmix's high bits mix best).
    bool next_bit() { return (next() >> 63) != 0; }

private:
    std::uint64_t state_;
};

// Derive an independent stream for sub-task `index` of a master seed. Feeding
// the pair through one splitmix step decorrelates neighbouring indices.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0x632be59bd9b4e019ULL * (index + 1)));
    return g.next();
}

} // namespace lhc
