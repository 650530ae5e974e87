#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace socialucb {

using NodeId = std::int32_t;
using Step = std::int64_t;
using Rng = std::mt19937_64;

/// Raised for invalid run configuration (unknown keys, out-of-range values).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a selection or oracle query is made over an empty action set.
class NoActionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Uniform draw in [0, 1) from the top 53 bits of the engine output.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Stable 64-bit mixing (splitmix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed for a named per-trial random stream. Distinct names give independent
/// streams so that changing how one subsystem draws never shifts another.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial_index,
                                    std::string_view stream) {
    return mix64(mix64(master_seed) ^ mix64(trial_index + 0x632be59bd9b4e019ULL) ^ fnv1a(stream));
}

inline Rng make_stream(std::uint64_t master_seed, std::uint64_t trial_index, std::string_view stream) {
    return Rng(derive_seed(master_seed, trial_index, stream));
}

}  // namespace socialucb
