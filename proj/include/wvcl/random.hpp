#pragma once

#include <cstdint>
#include <random>

namespace wvcl {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used to turn related seeds into decorrelated streams.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-symbol seed: base_seed XOR symbol_index. Sub-streams of one symbol
// (bits, fading, noise, ...) are separated with stream_seed().
constexpr std::uint64_t symbol_seed(std::uint64_t base_seed, std::uint64_t index) noexcept {
    return base_seed ^ index;
}

enum class Stream : std::uint64_t {
    Bits = 1,
    Fading = 2,
    Hardware = 3,
    Noise = 4,
    EsN0Draw = 5,
    Truncation = 6,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream s) noexcept {
    return mix_seed(seed ^ mix_seed(static_cast<std::uint64_t>(s)));
}

}  // namespace wvcl
