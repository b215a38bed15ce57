#include <cmath>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/types.hpp"

namespace wvcl {

const char* category_name(ErrorCategory c) noexcept {
    switch (c) {
        case ErrorCategory::InvalidInput: return "invalid-input";
        case ErrorCategory::DegenerateInput: return "degenerate-input";
        case ErrorCategory::Io: return "io";
        case ErrorCategory::Format: return "format";
        case ErrorCategory::Incompatible: return "incompatible";
        case ErrorCategory::Config: return "config";
    }
    return "unknown";
}

void check_frame(const ComplexFrame& frame, const char* context) {
    if (frame.empty()) throw InvalidInput(std::string(context) + ": empty frame");
    for (const Complex& z : frame.samples) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InvalidInput(std::string(context) + ": non-finite sample");
    }
}

double mean_power(const ComplexVector& x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (const Complex& z : x) acc += std::norm(z);
    return acc / static_cast<double>(x.size());
}

}  // namespace wvcl
