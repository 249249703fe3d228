#include "roughem/rng.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>

namespace roughem {

namespace {

// splitmix64 finalizer; full avalanche on 64 bits
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t key_hash(std::uint64_t seed, std::uint64_t path,
                              std::uint32_t tag, std::uint64_t slot) {
    std::uint64_t h = mix64(seed ^ 0x8f462907ecf0335dULL);
    h = mix64(h ^ path);
    h = mix64(h ^ (static_cast<std::uint64_t>(tag) << 56) ^ slot);
    return mix64(h);
}

} // namespace

double normal_quantile(double u) {
    // Phi^{-1}(u) = sqrt(2) erf^{-1}(2u - 1)
    return boost::math::erf_inv(2.0 * u - 1.0) * std::sqrt(2.0);
}

double CounterRng::uniform(std::uint32_t tag, std::uint64_t slot) const {
    const std::uint64_t h = key_hash(seed_, path_, tag, slot);
    // 53 significant bits, shifted to the open interval
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint32_t tag, std::uint64_t slot) const {
    return normal_quantile(uniform(tag, slot));
}

} // namespace roughem
