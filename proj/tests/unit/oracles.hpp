#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle {

using C = std::complex<double>;

// Naive O(n^2) DFT, exp(-j 2 pi n k / N).
inline std::vector<C> dft(const std::vector<C>& x) {
    const std::size_t n = x.size();
    std::vector<C> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        C acc{};
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = -2.0 * std::numbers::pi * double((t * k) % n) / double(n);
            acc += x[t] * C(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// Sort, then interpolate linearly at rank q (n - 1).
inline double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double r = q * double(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(r));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (r - double(lo)) * (v[hi] - v[lo]);
}

inline double mean(const std::vector<double>& v) {
    long double s = 0;
    for (double x : v) s += x;
    return double(s / v.size());
}

inline double central_moment(const std::vector<double>& v, int order) {
    const double m = mean(v);
    long double s = 0;
    for (double x : v) s += std::pow(x - m, order);
    return double(s / v.size());
}

inline double skewness(const std::vector<double>& v) {
    const double m2 = central_moment(v, 2);
    return m2 <= 1e-30 ? 0.0 : central_moment(v, 3) / std::pow(m2, 1.5);
}

// Golden-section maximization on [a, b].
template <typename F>
double argmax(F f, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    for (int i = 0; i < 200; ++i) {
        if (f(c) > f(d)) b = d; else a = c;
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    return 0.5 * (a + b);
}

}  // namespace oracle
