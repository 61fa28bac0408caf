#pragma once

#include <cstdint>

namespace addcomb {

/// SplitMix64. Chosen over std::mt19937 + distributions because its output
/// stream is pinned by the algorithm itself, so seeded runs reproduce
/// bit-exactly on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Unbiased value in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(1) << 64) % bound);
        for (;;) {
            std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

private:
    std::uint64_t state_;
};

} // namespace addcomb
