#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "wvcl/types.hpp"

namespace wvcl {

// Power-delay profile of a tapped-delay-line channel with Rayleigh taps.
// Tap powers are renormalized at construction so their linear sum is 1.
class ChannelProfile {
public:
    ChannelProfile(std::vector<std::size_t> tap_delays, std::vector<double> tap_powers_db,
                   bool regenerate_per_symbol, std::uint64_t seed);

    // Three taps at delays {0, 2, 5} samples, powers {0, -3, -6} dB, redrawn per symbol.
    static ChannelProfile default_profile(std::uint64_t seed = 0);

    const std::vector<std::size_t>& tap_delays() const noexcept { return tap_delays_; }
    // Normalized, in dB.
    const std::vector<double>& tap_powers_db() const noexcept { return tap_powers_db_; }
    const std::vector<double>& tap_powers_linear() const noexcept { return tap_powers_linear_; }
    bool regenerate_per_symbol() const noexcept { return regenerate_per_symbol_; }
    std::uint64_t seed() const noexcept { return seed_; }

    ChannelProfile with_seed(std::uint64_t seed) const;

    // One complex Gaussian coefficient per tap, E|h_k|^2 = tap_powers_linear()[k].
    ComplexVector draw_taps() const;

private:
    std::vector<std::size_t> tap_delays_;
    std::vector<double> tap_powers_db_;
    std::vector<double> tap_powers_linear_;
    bool regenerate_per_symbol_;
    std::uint64_t seed_;
};

// Symbol-energy-to-noise ratio in dB. +inf means "no noise"; -inf means the
// output carries noise only.
struct EsN0 {
    double value_db = 0.0;

    static constexpr EsN0 no_noise() { return {std::numeric_limits<double>::infinity()}; }
    static constexpr EsN0 noise_only() { return {-std::numeric_limits<double>::infinity()}; }
};

// Adds circular complex Gaussian noise with variance P/10^(esn0/10), where P is
// the measured mean power of the frame (sigma^2/2 per real dimension). For
// noise_only() the signal is discarded and unit-power-relative noise
// (variance P, or 1 for a silent frame) is returned.
ComplexFrame apply_awgn(const ComplexFrame& frame, EsN0 esn0, std::uint64_t rng_seed);

// y[n] = sum_k h_k x[n - d_k] with x[<0] = 0, truncated to the input length.
// Taps are drawn from profile.seed().
ComplexFrame apply_multipath(const ComplexFrame& frame, const ChannelProfile& profile);
ComplexFrame apply_taps(const ComplexFrame& frame, const std::vector<std::size_t>& delays,
                        const ComplexVector& taps);

struct HardwareImpairments {
    bool random_phase = false;
    double cfo_ppm = 0.0;
    double carrier_hz = 900e6;
    double sample_rate_hz = 200e3;

    bool enabled() const noexcept { return random_phase || cfo_ppm != 0.0; }
};

// Uniform random phase rotation and/or a carrier offset of cfo_ppm * 1e-6 * carrier_hz.
ComplexFrame apply_hardware(const ComplexFrame& frame, const HardwareImpairments& hw,
                            std::uint64_t rng_seed);

// Contiguous window of `window` samples at an offset uniform on [0, len - window].
ComplexFrame random_truncate(const ComplexFrame& frame, std::size_t window, std::uint64_t rng_seed);
std::size_t truncation_offset(std::size_t frame_length, std::size_t window, std::uint64_t rng_seed);

// Scales to unit mean power. Throws DegenerateInput on an all-zero frame.
ComplexFrame normalize_power(const ComplexFrame& frame);

}  // namespace wvcl
