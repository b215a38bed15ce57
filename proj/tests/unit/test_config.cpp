#include <cmath>

#include "doctest.h"
#include "wvcl/config.hpp"
#include "wvcl/error.hpp"

using namespace wvcl;

TEST_SUITE("config") {

TEST_CASE("defaults") {
    const auto c = parse_config("{}");
    CHECK(c.signal.n_subcarriers == 256);
    CHECK(c.signal.oversampling == 8);
    CHECK(c.features.mode == FeatureMode::WaveletVarIqr);
    CHECK(c.features.component == SampleComponent::Magnitude);
    CHECK(c.features.feature_length() == 280);
    CHECK(c.classifier.box_c == 1.0);
    CHECK(!c.classifier.kernel_gamma);
    CHECK(c.protocol.signal_pattern().alphas.size() == 7);
    CHECK(c.channel.multipath == false);
}

TEST_CASE("feature lengths per mode") {
    FeatureSettings f;
    f.mode = FeatureMode::WaveletVar;
    CHECK(f.feature_length() == 140);
    f.mode = FeatureMode::WaveletIqr;
    CHECK(f.feature_length() == 140);
    f.mode = FeatureMode::TStat;
    CHECK(f.feature_length() == 5);
    f.stat_kinds = {StatKind::Skewness};
    CHECK(f.feature_length() == 1);
    f.mode = FeatureMode::FStat;
    CHECK(f.domain() == FeatureDomain::Frequency);
}

TEST_CASE("patterns") {
    CHECK(SignalPattern::type_i().alphas == RealVector{1.0, 0.9, 0.8, 0.7});
    CHECK(SignalPattern::type_ii().alphas == RealVector{1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7});
    const auto c = parse_config(R"({"protocol": {"pattern": "TypeI", "alphas": [1.0, 0.6]}})");
    CHECK(c.protocol.signal_pattern().alphas == RealVector{1.0, 0.6});
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_config(R"({"signl": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"features": {"mode": "TStat", "wavelet": "morse"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"classifier": {"c": 1}})"), ConfigError);
}

TEST_CASE("bad values are rejected") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"features": {"mode": "Wavelet"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"features": {"stat_kinds": ["median"]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"features": {"component": "phase"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"features": {"window": 4096}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"classifier": {"C": -1}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"classifier": {"decoding": "exp"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"protocol": {"alphas": [1.0, 1.3]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"protocol": {"per_class_train": "many"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"protocol": {"test_esn0_db": ["loud"]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"channel": {"tap_delays": [0, 1], "tap_powers_db": [0]}})"), InvalidInput);
    CHECK_THROWS_AS(load_config("/nonexistent/wvcl.json"), IoError);
}

TEST_CASE("infinite Es/N0 values") {
    const auto c = parse_config(R"({"protocol": {"test_esn0_db": ["-inf", 0, "inf"]}, "generate": {"esn0_db": "inf"}})");
    REQUIRE(c.protocol.test_esn0_db.size() == 3);
    CHECK(std::isinf(c.protocol.test_esn0_db[0]));
    CHECK(c.protocol.test_esn0_db[0] < 0);
    CHECK(std::isinf(*c.generate.esn0_db));
    CHECK(parse_config(to_json_text(c)).protocol.test_esn0_db == c.protocol.test_esn0_db);
}

TEST_CASE("canonical text round trips") {
    const auto c = parse_config(R"({
        "channel": {"multipath": true, "cfo_ppm": 0.5},
        "features": {"mode": "FStat", "stat_kinds": ["Iqr", "Mean"], "component": "real"},
        "classifier": {"C": 2.5, "kernel_gamma": 0.01, "decoding": "hamming"},
        "protocol": {"pattern": "TypeI", "train_esn0_db": [0, 10, 20], "seed": 99},
        "output": {"directory": "somewhere"}
    })");
    const auto text = to_json_text(c);
    CHECK(to_json_text(parse_config(text)) == text);
    const auto d = parse_config(text);
    CHECK(d.channel.multipath);
    CHECK(d.features.component == SampleComponent::Real);
    CHECK(d.features.kinds() == StatSet{StatKind::Mean, StatKind::Iqr});
    CHECK(*d.classifier.kernel_gamma == 0.01);
    CHECK(d.classifier.decoding == Decoding::Hamming);
    CHECK(d.protocol.seed == 99);
    CHECK(d.output_directory == "somewhere");
}

}  // TEST_SUITE
