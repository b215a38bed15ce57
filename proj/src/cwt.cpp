#include "wvcl/cwt.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/fft.hpp"

namespace wvcl {

double MorseParams::peak_frequency() const { return std::pow(beta / gamma, 1.0 / gamma); }

void MorseParams::validate() const {
    if (!(gamma > 0.0) || !(beta > 0.0) || !std::isfinite(gamma) || !std::isfinite(beta))
        throw InvalidInput("MorseParams: gamma and beta must be finite and positive");
    const double wp = peak_frequency();
    if (!std::isfinite(wp) || !(wp > 0.0)) throw InvalidInput("MorseParams: degenerate peak frequency");
}

ScaleGrid build_scale_grid(std::size_t octaves, std::size_t voices, const MorseParams& params) {
    if (octaves < 1 || voices < 1) throw InvalidInput("build_scale_grid: octaves and voices must be >= 1");
    params.validate();
    ScaleGrid grid;
    grid.octaves = octaves;
    grid.voices_per_octave = voices;
    const double s_min = params.peak_frequency() / std::numbers::pi;
    const std::size_t count = octaves * voices;
    grid.scales.resize(count);
    for (std::size_t j = 0; j < count; ++j)
        grid.scales[j] = s_min * std::exp2(static_cast<double>(j) / static_cast<double>(voices));
    return grid;
}

RealVector morse_filter(const MorseParams& params, double scale, std::size_t n) {
    params.validate();
    if (!(scale > 0.0)) throw InvalidInput("morse_filter: scale must be positive");
    if (n < 2) throw InvalidInput("morse_filter: transform length must be >= 2");
    const double wp = params.peak_frequency();
    const double log_wp = std::log(wp);
    const double wp_gamma = std::pow(wp, params.gamma);
    RealVector h(n, 0.0);
    // 2 * (w/wp)^beta * exp(wp^gamma - w^gamma), evaluated in log space.
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double w = scale * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        const double log_value = params.beta * (std::log(w) - log_wp) + wp_gamma - std::pow(w, params.gamma);
        h[k] = log_value < -700.0 ? 0.0 : 2.0 * std::exp(log_value);
    }
    return h;
}

MorseFilterBank::MorseFilterBank(ScaleGrid grid, MorseParams params, std::size_t n)
    : grid_(std::move(grid)), params_(params), n_(n), n_bins_(n / 2 + 1) {
    if (n_ < 2) throw InvalidInput("MorseFilterBank: signal length must be >= 2");
    if (grid_.scales.empty()) throw InvalidInput("MorseFilterBank: empty scale grid");
    filters_.reserve(grid_.size());
    for (double s : grid_.scales) {
        RealVector h = morse_filter(params_, s, n_);
        h.resize(n_bins_);
        filters_.push_back(std::move(h));
    }
}

Scalogram MorseFilterBank::transform(std::span<const double> signal) const {
    if (signal.empty()) throw InvalidInput("cwt: empty signal");
    if (signal.size() != n_) {
        throw InvalidInput("cwt: signal length " + std::to_string(signal.size()) + " does not match filter bank length " +
                           std::to_string(n_));
    }
    ComplexVector x(signal.begin(), signal.end());
    const ComplexVector spectrum = fft::forward(x);

    Scalogram out;
    out.n_scales = grid_.size();
    out.n_time = n_;
    out.magnitudes.resize(out.n_scales * n_);

    ComplexVector product(n_);
    ComplexVector coeffs(n_);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (std::size_t s = 0; s < filters_.size(); ++s) {
        const RealVector& h = filters_[s];
        std::fill(product.begin(), product.end(), Complex(0.0, 0.0));
        for (std::size_t k = 0; k < n_bins_; ++k) product[k] = spectrum[k] * h[k];
        fft::backward(std::span<const Complex>(product), std::span<Complex>(coeffs));
        double* row = out.magnitudes.data() + s * n_;
        for (std::size_t t = 0; t < n_; ++t) row[t] = std::abs(coeffs[t]) * inv_n;
    }
    return out;
}

Scalogram cwt(std::span<const double> signal, const ScaleGrid& grid, const MorseParams& params) {
    if (signal.size() < 2) throw InvalidInput("cwt: signal must have at least 2 samples");
    return MorseFilterBank(grid, params, signal.size()).transform(signal);
}

RealVector reduce_time_axis(const Scalogram& scalogram, StatKind kind) {
    RealVector out(scalogram.n_scales);
    for (std::size_t s = 0; s < scalogram.n_scales; ++s) out[s] = stat(scalogram.row(s), kind);
    return out;
}

FeatureVector wavelet_feature_vector(const ComplexFrame& frame, const MorseFilterBank& bank,
                                     const StatSet& kinds) {
    check_frame(frame, "wavelet_feature_vector");
    if (frame.size() != bank.signal_length()) {
        throw InvalidInput("wavelet_feature_vector: frame length " + std::to_string(frame.size()) +
                           " differs from expected window " + std::to_string(bank.signal_length()));
    }
    RealVector re(frame.size()), im(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        re[i] = frame.samples[i].real();
        im[i] = frame.samples[i].imag();
    }
    const Scalogram real_part = bank.transform(re);
    const Scalogram imag_part = bank.transform(im);

    FeatureVector fv;
    fv.meta.domain = FeatureDomain::Wavelet;
    fv.values.reserve(2 * bank.grid().size() * kinds.size());
    for (StatKind k : kinds.kinds()) {
        const RealVector r = reduce_time_axis(real_part, k);
        const RealVector i = reduce_time_axis(imag_part, k);
        fv.values.insert(fv.values.end(), r.begin(), r.end());
        fv.values.insert(fv.values.end(), i.begin(), i.end());
    }
    return fv;
}

}  // namespace wvcl
