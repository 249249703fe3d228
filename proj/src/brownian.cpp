#include "roughem/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace roughem {

namespace {

constexpr std::uint32_t kAuxTagBase = 64;  // bridge tags are the levels 0..63

inline std::uint64_t packed_slot(std::uint64_t slot, int dim) {
    return slot * 4 + static_cast<std::uint64_t>(dim);
}

} // namespace

double BrownianPathGrid::aux_normal(std::uint32_t stream, std::uint64_t slot) const {
    CounterRng rng(seed, path_index);
    return rng.normal(kAuxTagBase + stream, slot);
}

BrownianPathGrid sample_path(std::uint64_t seed, std::uint64_t path_index, double horizon,
                             int level, int dims) {
    if (!(horizon > 0.0)) throw std::invalid_argument("sample_path: horizon must be positive");
    if (level < 0 || level > 24) throw std::invalid_argument("sample_path: level out of range [0, 24]");
    if (dims < 1 || dims > 3) throw std::invalid_argument("sample_path: dims out of range [1, 3]");

    BrownianPathGrid p;
    p.horizon = horizon;
    p.level = level;
    p.dims = dims;
    p.seed = seed;
    p.path_index = path_index;
    const int n = p.steps();
    p.increments.assign(static_cast<std::size_t>(n) * dims, 0.0);
    CounterRng rng(seed, path_index);

    for (int d = 0; d < dims; ++d) {
        // root increment W_T, then split each parent with bridge noise:
        // children = parent/2 +- xi, Var(xi) = parent_step / 4
        std::vector<double> a(static_cast<std::size_t>(n));
        a[0] = rng.normal(0, packed_slot(0, d)) * std::sqrt(horizon);
        for (int lev = 1; lev <= level; ++lev) {
            const double child_var = horizon / (1ULL << (lev + 1));
            const double sd = std::sqrt(child_var);
            for (int k = (1 << (lev - 1)) - 1; k >= 0; --k) {
                const double parent = a[static_cast<std::size_t>(k)];
                const double xi = rng.normal(static_cast<std::uint32_t>(lev),
                                             packed_slot(static_cast<std::uint64_t>(k), d)) * sd;
                a[static_cast<std::size_t>(2 * k)] = 0.5 * parent + xi;
                a[static_cast<std::size_t>(2 * k + 1)] = 0.5 * parent - xi;
            }
        }
        for (int k = 0; k < n; ++k)
            p.increments[static_cast<std::size_t>(k) * dims + d] = a[static_cast<std::size_t>(k)];
    }

    p.values.assign(static_cast<std::size_t>(n + 1) * dims, 0.0);
    for (int k = 0; k < n; ++k)
        for (int d = 0; d < dims; ++d)
            p.values[static_cast<std::size_t>(k + 1) * dims + d] =
                p.values[static_cast<std::size_t>(k) * dims + d] +
                p.increments[static_cast<std::size_t>(k) * dims + d];
    return p;
}

std::vector<double> coarsen(const BrownianPathGrid& path, int coarse_level) {
    if (coarse_level < 0 || coarse_level > path.level)
        throw std::invalid_argument("coarsen: coarse_level must lie in [0, path level]");
    const int stride = 1 << (path.level - coarse_level);
    const int n = 1 << coarse_level;
    std::vector<double> out(static_cast<std::size_t>(n) * path.dims, 0.0);
    for (int k = 0; k < n; ++k)
        for (int d = 0; d < path.dims; ++d) {
            double s = 0.0;
            for (int i = 0; i < stride; ++i)  // left-to-right, fixed order
                s += path.increment(k * stride + i, d);
            out[static_cast<std::size_t>(k) * path.dims + d] = s;
        }
    return out;
}

} // namespace roughem
