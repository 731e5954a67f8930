#ifndef PSOKIT_RANDOM_HPP
#define PSOKIT_RANDOM_HPP

#include <cstdint>

namespace psokit {

/// Counter-based uniform stream (SplitMix64). The n-th draw is a pure
/// function of (key, n), so values never depend on the order in which
/// different streams are consumed. One stream per particle keeps parallel
/// runs bit-reproducible.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n), unbiased. n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Key for an independent substream identified by (seed, tag, index).
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t tag,
                                   std::uint64_t index) {
    std::uint64_t k = detail::mix64(seed + 0x9e3779b97f4a7c15ULL);
    k = detail::mix64(k ^ (tag + 0xbf58476d1ce4e5b9ULL));
    k = detail::mix64(k ^ (index + 0x94d049bb133111ebULL));
    return k;
}

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag,
                            std::uint64_t index) {
    return SplitMix64(substream_key(seed, tag, index));
}

}  // namespace psokit

#endif  // PSOKIT_RANDOM_HPP
