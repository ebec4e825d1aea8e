#include "stresskit/rng.hpp"

#include <cmath>
#include <numbers>

namespace stresskit {

double SplitMix64::next_gaussian() noexcept {
    const double u1 = next_unit();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return g.next();
}

} // namespace stresskit
