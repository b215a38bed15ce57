#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wvcl/cwt.hpp"
#include "wvcl/error.hpp"

using namespace wvcl;

namespace {

const MorseParams kMorse{};

std::vector<double> cosine(std::size_t n, double w) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(w * double(i));
    return x;
}

std::size_t loudest_row(const Scalogram& s) {
    std::size_t best = 0;
    double best_v = -1;
    for (std::size_t r = 0; r < s.n_scales; ++r) {
        double acc = 0;
        for (double v : s.row(r)) acc += v;
        if (acc > best_v) best_v = acc, best = r;
    }
    return best;
}

}  // namespace

TEST_SUITE("cwt") {

TEST_CASE("peak frequency") {
    const double ref = oracle::argmax(
        [](double w) { return kMorse.beta * std::log(w) - std::pow(w, kMorse.gamma); }, 0.1, 5.0);
    CHECK(kMorse.peak_frequency() == doctest::Approx(ref).epsilon(1e-6));
    CHECK(kMorse.peak_frequency() == doctest::Approx(std::cbrt(20.0 / 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS((MorseParams{0.0, 20.0}.validate()), InvalidInput);
}

TEST_CASE("scale grid") {
    const auto g = build_scale_grid(7, 10, kMorse);
    REQUIRE(g.size() == 70);
    CHECK(g.scales[0] == doctest::Approx(kMorse.peak_frequency() / std::numbers::pi));
    for (std::size_t j = 1; j < g.size(); ++j) CHECK(g.scales[j] / g.scales[j - 1] == doctest::Approx(std::pow(2.0, 0.1)));
    CHECK(g.scales[10] / g.scales[0] == doctest::Approx(2.0));
}

TEST_CASE("filter shape") {
    const std::size_t n = 1024;
    const double s = kMorse.peak_frequency() * double(n) / (2.0 * std::numbers::pi * 100.0);
    const auto psi = morse_filter(kMorse, s, n);
    REQUIRE(psi.size() == n);
    CHECK(psi[0] == 0.0);
    CHECK(psi[100] == doctest::Approx(2.0).epsilon(1e-12));
    for (std::size_t k = n / 2 + 1; k < n; ++k) CHECK(psi[k] == 0.0);
    for (double v : psi) CHECK(v <= 2.0 + 1e-12);

    const auto psi2 = morse_filter(kMorse, 2.0 * s, n);
    for (std::size_t k = 1; k <= n / 4; ++k) CHECK(psi2[k] == doctest::Approx(psi[2 * k]).epsilon(1e-12));
}

TEST_CASE("zero signal") {
    const MorseFilterBank bank(build_scale_grid(3, 4, kMorse), kMorse, 64);
    const auto s = bank.transform(std::vector<double>(64, 0.0));
    CHECK(s.n_scales == 12);
    CHECK(s.n_time == 64);
    for (double v : s.magnitudes) CHECK(v == 0.0);
    CHECK_THROWS_AS(bank.transform(std::vector<double>(32, 0.0)), InvalidInput);
}

TEST_CASE("tones land on the matching scale") {
    const std::size_t n = 1024;
    const auto grid = build_scale_grid(7, 10, kMorse);
    const MorseFilterBank bank(grid, kMorse, n);
    const auto expected_row = [&](double w) {
        return std::lround(10.0 * std::log2(kMorse.peak_frequency() / w / grid.scales[0]));
    };

    CHECK(loudest_row(bank.transform(cosine(n, std::numbers::pi / 4))) == std::size_t(expected_row(std::numbers::pi / 4)));

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> octave(0.25, 4.25);
    for (int i = 0; i < 10; ++i) {
        const double w = std::numbers::pi * std::pow(2.0, -octave(rng));
        const long row = long(loudest_row(bank.transform(cosine(n, w))));
        CHECK(std::abs(row - expected_row(w)) <= 1);
    }
}

TEST_CASE("impulse localizes in time") {
    const std::size_t n = 512, t0 = 200;
    std::vector<double> x(n, 0.0);
    x[t0] = 1.0;
    const auto s = cwt(x, build_scale_grid(5, 10, kMorse), kMorse);
    for (std::size_t r = 0; r < s.n_scales; ++r) {
        const auto row = s.row(r);
        CHECK(std::size_t(std::max_element(row.begin(), row.end()) - row.begin()) == t0);
    }
}

TEST_CASE("circular shift and amplitude") {
    const std::size_t n = 256;
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    const MorseFilterBank bank(build_scale_grid(4, 6, kMorse), kMorse, n);
    const auto base = bank.transform(x);

    auto shifted = x;
    std::rotate(shifted.begin(), shifted.end() - 19, shifted.end());
    const auto sh = bank.transform(shifted);
    for (std::size_t r = 0; r < base.n_scales; ++r)
        for (std::size_t t = 0; t < n; ++t) CHECK(sh.at(r, (t + 19) % n) == doctest::Approx(base.at(r, t)).epsilon(1e-9));

    auto scaled = x;
    for (auto& v : scaled) v *= -3.0;
    const auto sc = bank.transform(scaled);
    for (std::size_t i = 0; i < sc.magnitudes.size(); ++i)
        CHECK(sc.magnitudes[i] == doctest::Approx(3.0 * base.magnitudes[i]).epsilon(1e-12));
}

TEST_CASE("time-axis reduction") {
    const MorseFilterBank bank(build_scale_grid(3, 10, kMorse), kMorse, 128);
    const auto s = bank.transform(cosine(128, 1.0));
    for (StatKind k : {StatKind::Variance, StatKind::Iqr}) {
        const auto r = reduce_time_axis(s, k);
        REQUIRE(r.size() == 30);
        for (std::size_t i = 0; i < r.size(); ++i) {
            const std::vector<double> row(s.row(i).begin(), s.row(i).end());
            const double ref = k == StatKind::Variance ? oracle::central_moment(row, 2)
                                                       : oracle::quantile(row, 0.75) - oracle::quantile(row, 0.25);
            CHECK(r[i] == doctest::Approx(ref).epsilon(1e-6));
        }
    }
    Scalogram flat{2, 4, RealVector(8, 1.5)};
    for (double v : reduce_time_axis(flat, StatKind::Variance)) CHECK(v == 0.0);
}

TEST_CASE("wavelet feature layout") {
    const std::size_t n = 256;
    const MorseFilterBank bank(build_scale_grid(7, 10, kMorse), kMorse, n);
    ComplexFrame f;
    for (std::size_t i = 0; i < n; ++i) f.samples.emplace_back(std::cos(0.3 * double(i)), 0.0);
    const auto one = wavelet_feature_vector(f, bank, {StatKind::Variance});
    CHECK(one.values.size() == 140);
    CHECK(one.meta.domain == FeatureDomain::Wavelet);
    for (std::size_t i = 70; i < 140; ++i) CHECK(one.values[i] == 0.0);
    const auto re = reduce_time_axis(bank.transform(std::vector<double>(cosine(n, 0.3))), StatKind::Variance);
    for (std::size_t i = 0; i < 70; ++i) CHECK(one.values[i] == doctest::Approx(re[i]));

    const auto both = wavelet_feature_vector(f, bank, {StatKind::Iqr, StatKind::Variance});
    CHECK(both.values.size() == 280);
    for (std::size_t i = 0; i < 140; ++i) CHECK(both.values[i] == one.values[i]);

    ComplexFrame short_frame;
    short_frame.samples.resize(100, Complex(1, 0));
    CHECK_THROWS_AS(wavelet_feature_vector(short_frame, bank, {StatKind::Variance}), InvalidInput);
}

}  // TEST_SUITE
