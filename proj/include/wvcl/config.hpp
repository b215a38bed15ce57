#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wvcl/channel.hpp"
#include "wvcl/cwt.hpp"
#include "wvcl/ecoc.hpp"
#include "wvcl/stats.hpp"

namespace wvcl {

enum class PatternName { TypeI, TypeII };

// Class set of one experiment. Class index = position in `alphas`.
struct SignalPattern {
    PatternName name = PatternName::TypeII;
    RealVector alphas;

    static SignalPattern type_i();   // {1, 0.9, 0.8, 0.7}
    static SignalPattern type_ii();  // {1, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7}
    static SignalPattern named(PatternName name);
};

std::string to_string(PatternName p);
PatternName pattern_from_string(const std::string& s);

enum class FeatureMode { TStat, FStat, WaveletVar, WaveletIqr, WaveletVarIqr };

std::string to_string(FeatureMode m);
FeatureMode feature_mode_from_string(const std::string& s);

struct SignalSettings {
    std::size_t n_subcarriers = 256;
    std::size_t oversampling = 8;
    double sample_rate_hz = 200e3;
};

struct ChannelSettings {
    bool multipath = false;
    std::vector<std::size_t> tap_delays{0, 2, 5};
    std::vector<double> tap_powers_db{0.0, -3.0, -6.0};
    bool regenerate_per_symbol = true;
    bool random_phase = false;
    double cfo_ppm = 0.0;
    double carrier_hz = 900e6;
    std::uint64_t seed = 1;

    ChannelProfile profile() const;
    HardwareImpairments hardware(double sample_rate_hz) const;
};

struct FeatureSettings {
    FeatureMode mode = FeatureMode::WaveletVarIqr;
    // Statistics used by TStat/FStat; empty means all five.
    std::vector<StatKind> stat_kinds;
    // Real sequence the TStat/FStat statistics are computed on.
    SampleComponent component = SampleComponent::Magnitude;
    MorseParams morse;
    std::size_t octaves = 7;
    std::size_t voices = 10;
    std::size_t window = 1024;

    FeatureDomain domain() const;
    StatSet kinds() const;
    // |kinds| for statistics modes, 2 * octaves * voices * |kinds| for wavelet modes.
    std::size_t feature_length() const;
};

struct ClassifierSettings {
    double box_c = 1.0;
    int kernel_degree = 2;
    std::optional<double> kernel_gamma;  // unset: 1 / feature dimension
    double coef0 = 1.0;
    double tol = 1e-3;
    std::size_t max_iterations = 0;
    Decoding decoding = Decoding::LossWeighted;

    EcocTrainOptions train_options() const;
};

struct ProtocolSettings {
    PatternName pattern = PatternName::TypeII;
    std::optional<RealVector> alphas;  // overrides the pattern's class set
    RealVector train_esn0_db{20.0};
    std::size_t per_class_train = 500;
    std::size_t per_class_test = 200;
    RealVector test_esn0_db{-20, -10, 0, 10, 20, 30, 40, 50};
    std::uint64_t seed = 2021;

    SignalPattern signal_pattern() const;
};

struct GenerateSettings {
    double alpha = 1.0;
    std::size_t symbols = 10;
    std::optional<double> esn0_db;  // unset: noiseless
    std::uint64_t seed = 7;
};

struct ExperimentConfig {
    SignalSettings signal;
    ChannelSettings channel;
    FeatureSettings features;
    ClassifierSettings classifier;
    ProtocolSettings protocol;
    GenerateSettings generate;
    std::filesystem::path output_directory = "wvcl_out";

    void validate() const;
};

// Strict JSON reader: unknown sections or keys are rejected with ConfigError.
// Missing keys take the defaults above.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Canonical JSON text (all keys, fixed order); parse_config(to_json_text(c)) == c.
std::string to_json_text(const ExperimentConfig& config, int indent = 2);

}  // namespace wvcl
