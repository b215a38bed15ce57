#include "wvcl/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/random.hpp"

namespace wvcl {

ChannelProfile::ChannelProfile(std::vector<std::size_t> tap_delays, std::vector<double> tap_powers_db,
                               bool regenerate_per_symbol, std::uint64_t seed)
    : tap_delays_(std::move(tap_delays)),
      regenerate_per_symbol_(regenerate_per_symbol),
      seed_(seed) {
    if (tap_delays_.empty()) throw InvalidInput("ChannelProfile: no taps");
    if (tap_delays_.size() != tap_powers_db.size())
        throw InvalidInput("ChannelProfile: tap delay and power counts differ");
    if (tap_delays_.front() != 0) throw InvalidInput("ChannelProfile: first tap delay must be 0");
    for (std::size_t i = 1; i < tap_delays_.size(); ++i) {
        if (tap_delays_[i] <= tap_delays_[i - 1])
            throw InvalidInput("ChannelProfile: tap delays must be strictly increasing");
    }
    double total = 0.0;
    for (double db : tap_powers_db) {
        if (!std::isfinite(db)) throw InvalidInput("ChannelProfile: non-finite tap power");
        total += std::pow(10.0, db / 10.0);
    }
    for (double db : tap_powers_db) {
        const double lin = std::pow(10.0, db / 10.0) / total;
        tap_powers_linear_.push_back(lin);
        tap_powers_db_.push_back(10.0 * std::log10(lin));
    }
}

ChannelProfile ChannelProfile::default_profile(std::uint64_t seed) {
    return ChannelProfile({0, 2, 5}, {0.0, -3.0, -6.0}, true, seed);
}

ChannelProfile ChannelProfile::with_seed(std::uint64_t seed) const {
    ChannelProfile p = *this;
    p.seed_ = seed;
    return p;
}

ComplexVector ChannelProfile::draw_taps() const {
    Rng rng(seed_);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector taps;
    taps.reserve(tap_powers_linear_.size());
    for (double p : tap_powers_linear_) {
        const double sd = std::sqrt(p / 2.0);
        const double re = gauss(rng);
        const double im = gauss(rng);
        taps.emplace_back(sd * re, sd * im);
    }
    return taps;
}

ComplexFrame apply_awgn(const ComplexFrame& frame, EsN0 esn0, std::uint64_t rng_seed) {
    check_frame(frame, "apply_awgn");
    if (std::isnan(esn0.value_db)) throw InvalidInput("apply_awgn: Es/N0 is NaN");
    if (esn0.value_db == std::numeric_limits<double>::infinity()) return frame;

    const double p_sig = mean_power(frame.samples);
    const bool noise_only = esn0.value_db == -std::numeric_limits<double>::infinity();
    double variance = 0.0;
    if (noise_only)
        variance = p_sig > 0.0 ? p_sig : 1.0;
    else
        variance = p_sig / std::pow(10.0, esn0.value_db / 10.0);
    const double sd = std::sqrt(variance / 2.0);

    Rng rng(rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexFrame out = frame;
    for (Complex& z : out.samples) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        const Complex n(sd * re, sd * im);
        z = noise_only ? n : z + n;
    }
    return out;
}

ComplexFrame apply_taps(const ComplexFrame& frame, const std::vector<std::size_t>& delays,
                        const ComplexVector& taps) {
    check_frame(frame, "apply_multipath");
    if (delays.size() != taps.size()) throw InvalidInput("apply_multipath: tap/delay count mismatch");
    for (std::size_t d : delays) {
        if (d >= frame.size())
            throw InvalidInput("apply_multipath: tap delay " + std::to_string(d) + " >= frame length " +
                               std::to_string(frame.size()));
    }
    ComplexFrame out{ComplexVector(frame.size(), Complex(0.0, 0.0)), frame.sample_rate_hz};
    for (std::size_t t = 0; t < taps.size(); ++t) {
        const std::size_t d = delays[t];
        for (std::size_t n = d; n < frame.size(); ++n) out.samples[n] += taps[t] * frame.samples[n - d];
    }
    return out;
}

ComplexFrame apply_multipath(const ComplexFrame& frame, const ChannelProfile& profile) {
    return apply_taps(frame, profile.tap_delays(), profile.draw_taps());
}

ComplexFrame apply_hardware(const ComplexFrame& frame, const HardwareImpairments& hw,
                            std::uint64_t rng_seed) {
    check_frame(frame, "apply_hardware");
    ComplexFrame out = frame;
    if (!hw.enabled()) return out;
    Rng rng(rng_seed);
    double phase0 = 0.0;
    if (hw.random_phase) phase0 = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
    const double cycles_per_sample = hw.cfo_ppm * 1e-6 * hw.carrier_hz / hw.sample_rate_hz;
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double phase = phase0 + 2.0 * std::numbers::pi * cycles_per_sample * static_cast<double>(n);
        out.samples[n] *= std::polar(1.0, phase);
    }
    return out;
}

std::size_t truncation_offset(std::size_t frame_length, std::size_t window, std::uint64_t rng_seed) {
    if (window == 0) throw InvalidInput("random_truncate: window must be positive");
    if (window > frame_length)
        throw InvalidInput("random_truncate: window " + std::to_string(window) + " exceeds frame length " +
                           std::to_string(frame_length));
    Rng rng(rng_seed);
    return std::uniform_int_distribution<std::size_t>(0, frame_length - window)(rng);
}

ComplexFrame random_truncate(const ComplexFrame& frame, std::size_t window, std::uint64_t rng_seed) {
    const std::size_t offset = truncation_offset(frame.size(), window, rng_seed);
    ComplexFrame out;
    out.sample_rate_hz = frame.sample_rate_hz;
    out.samples.assign(frame.samples.begin() + static_cast<std::ptrdiff_t>(offset),
                       frame.samples.begin() + static_cast<std::ptrdiff_t>(offset + window));
    return out;
}

ComplexFrame normalize_power(const ComplexFrame& frame) {
    check_frame(frame, "normalize_power");
    const double p = mean_power(frame.samples);
    if (!(p > 0.0)) throw DegenerateInput("normalize_power: frame has zero power");
    const double g = 1.0 / std::sqrt(p);
    ComplexFrame out = frame;
    for (Complex& z : out.samples) z *= g;
    return out;
}

}  // namespace wvcl
