#pragma once

#include <span>

#include "wvcl/types.hpp"

namespace wvcl::fft {

// Thin wrappers over FFTW. Plans are created with FFTW_ESTIMATE so the chosen
// algorithm (and therefore every output bit) is identical from run to run.
// Plans are cached per thread; planning itself is serialized internally.

// out[k] = sum_n in[n] exp(-j 2 pi n k / N)
void forward(std::span<const Complex> in, std::span<Complex> out);

// out[n] = sum_k in[k] exp(+j 2 pi n k / N), no 1/N factor
void backward(std::span<const Complex> in, std::span<Complex> out);

ComplexVector forward(const ComplexVector& in);
ComplexVector backward(const ComplexVector& in);

}  // namespace wvcl::fft
