#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wvcl/config.hpp"
#include "wvcl/cwt.hpp"
#include "wvcl/ecoc.hpp"
#include "wvcl/waveform.hpp"

namespace wvcl {

// Bumped whenever the feature extraction changes in a way that invalidates saved models.
inline constexpr int kFeaturePipelineVersion = 1;

// Turns a received window into the feature vector selected by FeatureSettings.
// Immutable; safe to share between threads.
class Featurizer {
public:
    explicit Featurizer(FeatureSettings settings);

    const FeatureSettings& settings() const noexcept { return settings_; }
    FeatureVector operator()(const ComplexFrame& window) const;

private:
    FeatureSettings settings_;
    std::optional<MorseFilterBank> bank_;
};

struct Dataset {
    FeatureMatrix features;
    std::vector<int> labels;
    std::vector<FeatureMeta> meta;
};

// Transmit + channel for one symbol: QPSK bits -> synthesis -> optional
// multipath -> optional hardware impairments -> AWGN at an Es/N0 drawn
// uniformly from esn0_mix_db. All randomness derives from symbol_seed.
ComplexFrame simulate_symbol(const ExperimentConfig& config, const SefdmConfig& waveform,
                             const RealVector& esn0_mix_db, std::uint64_t symbol_seed,
                             double* drawn_esn0_db = nullptr);

// Receiver front end: unit-power normalization, then a random window.
ComplexFrame receive_window(const ComplexFrame& symbol, std::size_t window, std::uint64_t symbol_seed);

SefdmConfig waveform_for(const ExperimentConfig& config, double alpha);

// per_class symbols for every class of the pattern, class-major order. Symbol
// i of class c uses symbol_seed(base_seed, c * per_class + i).
Dataset build_dataset(const ExperimentConfig& config, const SignalPattern& pattern, const RealVector& esn0_mix_db,
                      std::size_t per_class, std::uint64_t base_seed);

enum class DatasetRole { Train, Test };

// Protocol-driven dataset: Train uses protocol.train_esn0_db and
// per_class_train; Test uses the same mix with per_class_test and a disjoint seed.
Dataset build_dataset(const ExperimentConfig& config, DatasetRole role);

std::uint64_t train_seed(std::uint64_t protocol_seed);
std::uint64_t test_seed(std::uint64_t protocol_seed, double esn0_db);

// Builds the training set, trains the ECOC model and records the full
// configuration plus pipeline version in model.metadata.
EcocModel run_protocol(const ExperimentConfig& config);

// Configuration recorded in a trained model; IncompatibleError when the
// metadata is missing or was produced by a different pipeline version.
ExperimentConfig config_from_model(const EcocModel& model);

struct SweepPoint {
    double esn0_db = 0.0;
    std::size_t n_test = 0;
    Evaluation evaluation;
};

struct SweepResult {
    RealVector class_values;
    std::vector<SweepPoint> points;
    std::string provenance;  // JSON text written to protocol.meta
};

// One fresh, single-Es/N0 test set per point. The model's recorded feature
// settings and class set must match `config`.
SweepResult sweep(const EcocModel& model, const ExperimentConfig& config, const RealVector& test_esn0_db,
                  std::size_t per_class_test);

// Shortest round-trip decimal text, used for every number in the reports.
std::string format_number(double v);

// accuracy_sweep.csv, confusion_<esn0>.csv per point, protocol.meta.
std::vector<std::filesystem::path> emit_reports(const SweepResult& result, const std::filesystem::path& out_dir);

}  // namespace wvcl
