#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "wvcl/stats.hpp"
#include "wvcl/types.hpp"

namespace wvcl {

// Generalized Morse wavelet, frequency response proportional to
// w^beta exp(-w^gamma) on w > 0.
struct MorseParams {
    double gamma = 3.0;
    double beta = 20.0;

    // (beta / gamma)^(1 / gamma), radians per sample at unit scale.
    double peak_frequency() const;
    void validate() const;
};

// Logarithmic scale grid: scales[j] = s_min * 2^(j / voices), j < octaves * voices.
// s_min = peak_frequency / pi puts the finest scale's peak at Nyquist.
struct ScaleGrid {
    std::size_t octaves = 7;
    std::size_t voices_per_octave = 10;
    RealVector scales;

    std::size_t size() const noexcept { return scales.size(); }
};

ScaleGrid build_scale_grid(std::size_t octaves, std::size_t voices, const MorseParams& params);

// Analytic filter sampled at w_k = 2 pi k / n for k = 0 .. n/2, zero for the
// negative-frequency half. Scaled so the continuous peak (at w = w_p / scale) is 2.
RealVector morse_filter(const MorseParams& params, double scale, std::size_t n);

// Magnitude scalogram, row-major (one row per scale).
struct Scalogram {
    std::size_t n_scales = 0;
    std::size_t n_time = 0;
    RealVector magnitudes;

    std::span<const double> row(std::size_t s) const {
        return {magnitudes.data() + s * n_time, n_time};
    }
    double at(std::size_t s, std::size_t t) const { return magnitudes[s * n_time + t]; }
};

// Filters for one (grid, params, signal length) triple. Immutable after
// construction; transform() may be called concurrently.
class MorseFilterBank {
public:
    MorseFilterBank(ScaleGrid grid, MorseParams params, std::size_t n);

    const ScaleGrid& grid() const noexcept { return grid_; }
    const MorseParams& params() const noexcept { return params_; }
    std::size_t signal_length() const noexcept { return n_; }

    // Periodic-boundary CWT of a real signal of length signal_length().
    Scalogram transform(std::span<const double> signal) const;

private:
    ScaleGrid grid_;
    MorseParams params_;
    std::size_t n_;
    std::size_t n_bins_;              // n / 2 + 1 positive-frequency bins
    std::vector<RealVector> filters_;  // truncated to n_bins_
};

Scalogram cwt(std::span<const double> signal, const ScaleGrid& grid, const MorseParams& params);

// stat(row, kind) for every scale row.
RealVector reduce_time_axis(const Scalogram& scalogram, StatKind kind);

// CWT of the real part and of the imaginary part; for each kind in canonical
// order appends the real-part reduction then the imaginary-part reduction.
// Length = 2 * n_scales * |kinds|.
FeatureVector wavelet_feature_vector(const ComplexFrame& frame, const MorseFilterBank& bank,
                                     const StatSet& kinds);

}  // namespace wvcl
