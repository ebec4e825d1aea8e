#pragma once

#include <cstdint>

namespace stresskit {

/// splitmix64: tiny counter-based generator with full 64-bit avalanche.
/// Used for surrogate draws and for deriving per-window seeds, so results
/// never depend on library distribution internals or thread schedule.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in (0, 1].
    double next_unit() noexcept {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via the Box-Muller transform (closed form, no
    /// rejection, hence bit-stable across platforms).
    double next_gaussian() noexcept;

private:
    std::uint64_t state_;
};

/// Stable derivation of a stream seed from a base seed and a stream index.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept;

} // namespace stresskit
