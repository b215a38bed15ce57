#include "wvcl/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "wvcl/error.hpp"

namespace wvcl::fft {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

class Plan {
public:
    Plan(std::size_t n, int sign) : n_(n) {
        std::lock_guard lock(planner_mutex());
        buf_ = fftw_alloc_complex(n);
        if (buf_ == nullptr) throw std::bad_alloc();
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), buf_, buf_, sign, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
        fftw_free(buf_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void execute(std::span<const Complex> in, std::span<Complex> out) {
        auto* b = reinterpret_cast<Complex*>(buf_);
        std::copy(in.begin(), in.end(), b);
        fftw_execute(plan_);
        std::copy(b, b + n_, out.begin());
    }

private:
    std::size_t n_;
    fftw_complex* buf_ = nullptr;
    fftw_plan plan_ = nullptr;
};

Plan& cached_plan(std::size_t n, int sign) {
    thread_local std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan>> cache;
    auto& slot = cache[{n, sign}];
    if (!slot) slot = std::make_unique<Plan>(n, sign);
    return *slot;
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
    if (in.empty()) throw InvalidInput("fft: empty input");
    if (in.size() != out.size()) throw InvalidInput("fft: input/output length mismatch");
    cached_plan(in.size(), sign).execute(in, out);
}

}  // namespace

void forward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }

void backward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

ComplexVector forward(const ComplexVector& in) {
    ComplexVector out(in.size());
    forward(std::span<const Complex>(in), std::span<Complex>(out));
    return out;
}

ComplexVector backward(const ComplexVector& in) {
    ComplexVector out(in.size());
    backward(std::span<const Complex>(in), std::span<Complex>(out));
    return out;
}

}  // namespace wvcl::fft
