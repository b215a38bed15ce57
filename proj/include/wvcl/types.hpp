#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace wvcl {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

// A block of complex baseband samples: one symbol, a capture, or a window of either.
struct ComplexFrame {
    ComplexVector samples;
    double sample_rate_hz = 0.0;  // informational only

    std::size_t size() const noexcept { return samples.size(); }
    bool empty() const noexcept { return samples.empty(); }
};

// Throws InvalidInput when the frame is empty or holds non-finite samples.
void check_frame(const ComplexFrame& frame, const char* context);

double mean_power(const ComplexVector& x);

}  // namespace wvcl
