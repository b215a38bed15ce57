#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wvcl/error.hpp"
#include "wvcl/experiment.hpp"
#include "wvcl/io.hpp"

using namespace wvcl;

namespace {

ExperimentConfig small_config(FeatureMode mode, PatternName pattern) {
    ExperimentConfig c;
    c.features.mode = mode;
    c.protocol.pattern = pattern;
    c.protocol.per_class_train = 20;
    c.protocol.per_class_test = 10;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("seed derivation") {
    CHECK(symbol_seed(10, 3) == (10u ^ 3u));
    CHECK(stream_seed(5, Stream::Bits) != stream_seed(5, Stream::Noise));
    CHECK(train_seed(1) != test_seed(1, 20.0));
    CHECK(test_seed(1, 20.0) != test_seed(1, 10.0));
    CHECK(test_seed(1, 0.0) != test_seed(1, -0.0));
}

TEST_CASE("simulated symbols") {
    const auto c = small_config(FeatureMode::TStat, PatternName::TypeI);
    const auto w = waveform_for(c, 0.8);
    const auto a = simulate_symbol(c, w, {20.0}, 7);
    CHECK(a.size() == 2048);
    CHECK(a.sample_rate_hz == 200e3);
    CHECK(simulate_symbol(c, w, {20.0}, 7).samples == a.samples);
    CHECK(simulate_symbol(c, w, {20.0}, 8).samples != a.samples);
    const auto clean = simulate_symbol(c, w, {std::numeric_limits<double>::infinity()}, 7);
    CHECK(clean.samples != a.samples);

    double drawn = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        simulate_symbol(c, w, {0.0, 10.0, 20.0}, s, &drawn);
        CHECK((drawn == 0.0 || drawn == 10.0 || drawn == 20.0));
    }
    const auto win = receive_window(a, 1024, 7);
    CHECK(win.size() == 1024);
    CHECK_THROWS_AS(simulate_symbol(c, w, {}, 1), InvalidInput);
}

TEST_CASE("dataset shape and balance") {
    for (auto pattern : {PatternName::TypeI, PatternName::TypeII}) {
        const auto c = small_config(FeatureMode::TStat, pattern);
        const auto p = c.protocol.signal_pattern();
        const auto ds = build_dataset(c, p, {20.0}, 3, 11);
        CHECK(ds.features.rows() == 3 * p.alphas.size());
        CHECK(ds.features.cols() == 5);
        for (std::size_t i = 0; i < ds.labels.size(); ++i) {
            CHECK(ds.labels[i] == int(i / 3));
            CHECK(ds.meta[i].alpha == p.alphas[i / 3]);
            for (double v : ds.features.row(i)) CHECK(std::isfinite(v));
        }
    }
    const auto one = build_dataset(small_config(FeatureMode::WaveletVar, PatternName::TypeII),
                                   SignalPattern::type_ii(), {20.0}, 1, 3);
    CHECK(one.features.rows() == 7);
    CHECK(one.features.cols() == 140);
    CHECK_THROWS_AS(build_dataset(small_config(FeatureMode::TStat, PatternName::TypeI), SignalPattern::type_i(),
                                  {20.0}, 0, 1),
                    InvalidInput);
}

TEST_CASE("full-size row counts") {
    auto c = small_config(FeatureMode::TStat, PatternName::TypeII);
    CHECK(build_dataset(c, SignalPattern::type_ii(), {20.0}, 2000, 1).features.rows() == 14000);
    CHECK(build_dataset(c, SignalPattern::type_i(), {20.0}, 800, 2).features.rows() == 3200);
}

TEST_CASE("datasets are reproducible") {
    const auto c = small_config(FeatureMode::WaveletIqr, PatternName::TypeI);
    const auto a = build_dataset(c, DatasetRole::Train);
    const auto b = build_dataset(c, DatasetRole::Train);
    CHECK(a.features.data() == b.features.data());
    const auto t = build_dataset(c, DatasetRole::Test);
    CHECK(t.features.rows() == 40);
    CHECK(t.features.row(0)[0] != a.features.row(0)[0]);
}

TEST_CASE("protocol, sweep and reports") {
    auto c = small_config(FeatureMode::WaveletVar, PatternName::TypeI);
    const auto model = run_protocol(c);
    CHECK(model.learners.size() == 6);
    CHECK(model.feature_dimension() == 140);
    const auto recorded = config_from_model(model);
    CHECK(to_json_text(recorded) == to_json_text(c));

    const RealVector points{-std::numeric_limits<double>::infinity(), 20.0};
    const auto result = sweep(model, c, points, 10);
    REQUIRE(result.points.size() == 2);
    for (const auto& p : result.points) {
        CHECK(p.n_test == 40);
        std::size_t total = 0;
        for (const auto& row : p.evaluation.confusion) {
            std::size_t r = 0;
            for (auto v : row) r += v;
            CHECK(r == 10);
            total += r;
        }
        CHECK(total == 40);
    }
    CHECK(result.points[0].evaluation.accuracy <= 0.5);
    CHECK(result.points[1].evaluation.accuracy >= 0.75);

    const auto dir = std::filesystem::temp_directory_path() / "wvcl_test_reports";
    std::filesystem::remove_all(dir);
    const auto files = emit_reports(result, dir);
    CHECK(files.size() == 4);
    const auto csv = slurp(dir / "accuracy_sweep.csv");
    CHECK(csv.rfind("test_esn0_db,accuracy,n_test\n-inf,", 0) == 0);
    CHECK(slurp(dir / "confusion_20.csv").rfind("1,0.9,0.8,0.7\n", 0) == 0);
    CHECK(slurp(dir / "protocol.meta").find("feature_pipeline_version") != std::string::npos);

    const auto again = sweep(model, c, points, 10);
    const auto dir2 = dir.string() + "_again";
    emit_reports(again, dir2);
    for (const auto& f : files) CHECK(slurp(f) == slurp(std::filesystem::path(dir2) / f.filename()));
    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("incompatible models are refused") {
    auto c = small_config(FeatureMode::TStat, PatternName::TypeI);
    const auto model = run_protocol(c);

    auto other = c;
    other.features.mode = FeatureMode::WaveletIqr;
    CHECK_THROWS_AS(sweep(model, other, {20.0}, 2), IncompatibleError);
    other = c;
    other.features.stat_kinds = {StatKind::Mean, StatKind::Variance, StatKind::Skewness, StatKind::Iqr,
                                 StatKind::MaxMinRatio};
    other.features.component = SampleComponent::Power;
    CHECK_THROWS_AS(sweep(model, other, {20.0}, 2), IncompatibleError);

    auto stale = model;
    stale.metadata = R"({"feature_pipeline_version": 0, "config": {}})";
    CHECK_THROWS_AS(config_from_model(stale), IncompatibleError);
    stale.metadata = "";
    CHECK_THROWS_AS(config_from_model(stale), IncompatibleError);
    CHECK_THROWS_AS(config_from_model(decode_model(encode_model(stale))), IncompatibleError);
}

TEST_CASE("best accuracy at the training Es/N0") {
    auto c = small_config(FeatureMode::WaveletVar, PatternName::TypeI);
    c.protocol.per_class_train = 100;
    const auto model = run_protocol(c);
    const RealVector points{0, 10, 20, 30, 40};
    const auto result = sweep(model, c, points, 50);
    std::size_t best = 0;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (result.points[i].evaluation.accuracy > result.points[best].evaluation.accuracy) best = i;
    CHECK(points[best] == 20.0);
    CHECK(result.points[0].evaluation.accuracy < result.points[2].evaluation.accuracy);
}

}  // TEST_SUITE
