#pragma once

#include <cstdint>

namespace roughem {

// Inverse of the standard normal CDF, usable on (0, 1).
double normal_quantile(double u);

// Counter-based generator: every draw is a pure function of
// (seed, path_index, tag, slot), so streams can be evaluated in any
// order and from any thread without shared state.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t path_index)
        : seed_(seed), path_(path_index) {}

    // uniform in the open interval (0, 1)
    double uniform(std::uint32_t tag, std::uint64_t slot) const;

    // standard normal via the inverse CDF (no rejection, count-stable)
    double normal(std::uint32_t tag, std::uint64_t slot) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t path_index() const { return path_; }

private:
    std::uint64_t seed_;
    std::uint64_t path_;
};

} // namespace roughem
