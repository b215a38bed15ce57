#include "wvcl/waveform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/fft.hpp"

namespace wvcl {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_symbol_vector(const SefdmConfig& cfg, const QpskVector& s, const char* where) {
    if (s.size() != cfg.n_subcarriers()) {
        throw InvalidInput(std::string(where) + ": expected " + std::to_string(cfg.n_subcarriers()) +
                           " subcarrier symbols, got " + std::to_string(s.size()));
    }
}

// R(d) for d in [-(N-1), N-1], stored at index d + N - 1.
ComplexVector autocorrelation(const ComplexVector& s) {
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    ComplexVector r(2 * s.size() - 1);
    for (std::ptrdiff_t d = -(n - 1); d <= n - 1; ++d) {
        Complex acc = 0.0;
        for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, d); i < std::min(n, n + d); ++i)
            acc += s[i] * std::conj(s[i - d]);
        r[d + n - 1] = acc;
    }
    return r;
}

Complex ici_from_autocorrelation(const ComplexVector& r, std::size_t n_sub, double phase_step) {
    const auto n = static_cast<std::ptrdiff_t>(n_sub);
    Complex acc = 0.0;
    for (std::ptrdiff_t d = -(n - 1); d <= n - 1; ++d) {
        if (d == 0) continue;
        acc += r[d + n - 1] * std::polar(1.0, phase_step * static_cast<double>(d));
    }
    return acc / static_cast<double>(n_sub);
}

}  // namespace

SefdmConfig::SefdmConfig(std::size_t n_subcarriers, double alpha, std::size_t oversampling,
                         Modulation modulation)
    : n_subcarriers_(n_subcarriers),
      alpha_(alpha),
      oversampling_(oversampling),
      modulation_(modulation) {
    if (n_subcarriers_ < 1) throw InvalidInput("SefdmConfig: n_subcarriers must be >= 1");
    if (oversampling_ < 1) throw InvalidInput("SefdmConfig: oversampling must be >= 1");
    if (!(alpha_ > 0.0 && alpha_ <= 1.0))
        throw InvalidInput("SefdmConfig: alpha must lie in (0, 1], got " + std::to_string(alpha_));
    transform_length_ = static_cast<std::size_t>(std::llround(static_cast<double>(symbol_length()) / alpha_));
    effective_alpha_ = static_cast<double>(symbol_length()) / static_cast<double>(transform_length_);
}

SefdmConfig SefdmConfig::with_alpha(double alpha) const {
    return SefdmConfig(n_subcarriers_, alpha, oversampling_, modulation_);
}

QpskVector::QpskVector(ComplexVector symbols) : symbols_(std::move(symbols)) {
    for (const Complex& z : symbols_) {
        if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InvalidInput("QpskVector: symbol off the unit circle");
    }
}

QpskVector map_qpsk(std::span<const std::uint8_t> bits) {
    if (bits.size() % 2 != 0) throw InvalidInput("map_qpsk: odd bit count " + std::to_string(bits.size()));
    const double a = 1.0 / std::sqrt(2.0);
    ComplexVector out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        const double re = bits[i] ? -a : a;
        const double im = bits[i + 1] ? -a : a;
        out.emplace_back(re, im);
    }
    return QpskVector(std::move(out));
}

std::vector<std::uint8_t> random_bits(std::size_t count, Rng& rng) {
    std::vector<std::uint8_t> bits(count);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

ComplexFrame generate_symbol_direct(const SefdmConfig& cfg, const QpskVector& s) {
    check_symbol_vector(cfg, s, "generate_symbol_direct");
    const std::size_t len = cfg.symbol_length();
    const double step = kTwoPi * cfg.alpha() / static_cast<double>(len);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n_subcarriers()));
    ComplexFrame frame;
    frame.samples.resize(len);
    for (std::size_t k = 0; k < len; ++k) {
        Complex acc = 0.0;
        for (std::size_t n = 0; n < cfg.n_subcarriers(); ++n) {
            acc += s.symbols()[n] * std::polar(1.0, step * static_cast<double>(n * k));
        }
        frame.samples[k] = acc * scale;
    }
    return frame;
}

ComplexFrame generate_symbol_ifft(const SefdmConfig& cfg, const QpskVector& s) {
    check_symbol_vector(cfg, s, "generate_symbol_ifft");
    const std::size_t q = cfg.transform_length();
    if (q < cfg.symbol_length()) throw InvalidInput("generate_symbol_ifft: transform shorter than symbol");
    ComplexVector spectrum(q, Complex(0.0, 0.0));
    std::copy(s.symbols().begin(), s.symbols().end(), spectrum.begin());
    ComplexVector time = fft::backward(spectrum);
    time.resize(cfg.symbol_length());
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n_subcarriers()));
    for (Complex& z : time) z *= scale;
    return ComplexFrame{std::move(time), 0.0};
}

RealVector instantaneous_power(const ComplexFrame& frame) {
    RealVector p(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) p[i] = std::norm(frame.samples[i]);
    return p;
}

Complex ici_component(const SefdmConfig& cfg, const QpskVector& s, std::size_t k) {
    check_symbol_vector(cfg, s, "ici_component");
    if (k >= cfg.symbol_length())
        throw InvalidInput("ici_component: sample index " + std::to_string(k) + " out of range");
    const ComplexVector r = autocorrelation(s.symbols());
    const double step = kTwoPi * cfg.alpha() / static_cast<double>(cfg.symbol_length());
    return ici_from_autocorrelation(r, cfg.n_subcarriers(), step * static_cast<double>(k));
}

ComplexVector ici_components(const SefdmConfig& cfg, const QpskVector& s) {
    check_symbol_vector(cfg, s, "ici_components");
    const ComplexVector r = autocorrelation(s.symbols());
    const double step = kTwoPi * cfg.alpha() / static_cast<double>(cfg.symbol_length());
    ComplexVector out(cfg.symbol_length());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = ici_from_autocorrelation(r, cfg.n_subcarriers(), step * static_cast<double>(k));
    return out;
}

}  // namespace wvcl
