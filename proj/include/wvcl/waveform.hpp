#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "wvcl/random.hpp"
#include "wvcl/types.hpp"

namespace wvcl {

enum class Modulation { Qpsk };

// Multicarrier symbol parameters.
//
// alpha is the bandwidth compression factor (subcarrier spacing times symbol
// period): 1 is OFDM, values below 1 squeeze the subcarriers together and
// introduce inter-carrier interference. The fast synthesis path needs an
// integer transform length round(oversampling * N / alpha), so the alpha that
// is actually realized is stored alongside the requested one.
class SefdmConfig {
public:
    SefdmConfig(std::size_t n_subcarriers, double alpha, std::size_t oversampling,
                Modulation modulation = Modulation::Qpsk);

    std::size_t n_subcarriers() const noexcept { return n_subcarriers_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t oversampling() const noexcept { return oversampling_; }
    Modulation modulation() const noexcept { return modulation_; }

    std::size_t symbol_length() const noexcept { return oversampling_ * n_subcarriers_; }
    // round(symbol_length / alpha)
    std::size_t transform_length() const noexcept { return transform_length_; }
    // symbol_length / transform_length
    double effective_alpha() const noexcept { return effective_alpha_; }

    // Same geometry with alpha replaced; used to evaluate the direct sum at the
    // alpha the fast path realizes.
    SefdmConfig with_alpha(double alpha) const;

private:
    std::size_t n_subcarriers_;
    double alpha_;
    std::size_t oversampling_;
    Modulation modulation_;
    std::size_t transform_length_;
    double effective_alpha_;
};

// Gray-mapped QPSK points (+-1 +- j)/sqrt(2).
class QpskVector {
public:
    explicit QpskVector(ComplexVector symbols);

    const ComplexVector& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }

private:
    ComplexVector symbols_;
};

// Bit pair (b1, b0) -> 00:(+1+j) 01:(+1-j) 10:(-1+j) 11:(-1-j), scaled by 1/sqrt(2).
QpskVector map_qpsk(std::span<const std::uint8_t> bits);

std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng);

// Direct double-loop evaluation of
//   X_k = 1/sqrt(N) sum_n s_n exp(j 2 pi n k alpha / (rho N)),  k = 0 .. rho N - 1
// using cfg.alpha() as given. O(rho N^2); the reference for the fast path.
ComplexFrame generate_symbol_direct(const SefdmConfig& cfg, const QpskVector& s);

// Zero-padded inverse FFT of length transform_length(), truncated to the first
// rho N samples. Equals generate_symbol_direct(cfg.with_alpha(cfg.effective_alpha()), s).
ComplexFrame generate_symbol_ifft(const SefdmConfig& cfg, const QpskVector& s);

RealVector instantaneous_power(const ComplexFrame& frame);

// Cross-term (m != n) part of |X_k|^2, evaluated in the lag domain:
//   ICI_k = 1/N sum_{d != 0} R(d) exp(j 2 pi d k alpha / (rho N)),
//   R(d)  = sum_n s_n conj(s_{n-d}).
// Real up to rounding.
Complex ici_component(const SefdmConfig& cfg, const QpskVector& s, std::size_t k);

// ici_component for every k in [0, rho N), sharing one autocorrelation.
ComplexVector ici_components(const SefdmConfig& cfg, const QpskVector& s);

}  // namespace wvcl
