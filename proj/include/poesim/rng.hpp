#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

// Seeding and sampling helpers.
//
// All randomness in the project flows through mt19937_64 plus the helpers
// below. The std::*_distribution adaptors are deliberately avoided: their
// output is implementation-defined, and identical seeds must produce
// byte-identical traces on every platform.

namespace poesim {

// Fixed substream-splitting function (splitmix64 finalizer over
// master + golden-ratio * (salt+1)). Component substreams are derived as
// mix_seed(master, salt), so adding agents or extending a horizon never
// perturbs the draws of other components.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Salts for the substreams hanging off one run seed. Agent substreams use
// the agent index itself; these constants are far outside that range.
inline constexpr std::uint64_t kGraphStream = 0x706f652d67726168ULL;
inline constexpr std::uint64_t kModelStream = 0x706f652d6d6f6465ULL;

// Uniform double in [0,1) from the top 53 bits of one raw draw.
inline double uniform_double(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) via rejection sampling.
inline std::uint64_t bounded_uint(std::mt19937_64& gen, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("bounded_uint: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = gen();
    } while (x >= limit);
    return x % n;
}

// Fisher-Yates with explicit bounded draws.
template <typename T>
void shuffle_in_place(std::vector<T>& values, std::mt19937_64& gen) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(bounded_uint(gen, i));
        std::swap(values[i - 1], values[j]);
    }
}

// Inverse-CDF draw from a finite distribution. Floating-point leftovers in
// the cumulative sum fall into the last symbol.
inline int sample_categorical(std::mt19937_64& gen, const std::vector<double>& probs) {
    const double u = uniform_double(gen);
    double cumulative = 0.0;
    for (std::size_t k = 0; k + 1 < probs.size(); ++k) {
        cumulative += probs[k];
        if (u < cumulative) return static_cast<int>(k);
    }
    return static_cast<int>(probs.size()) - 1;
}

}  // namespace poesim
