#include "wvcl/experiment.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"
#include "wvcl/channel.hpp"
#include "wvcl/error.hpp"
#include "wvcl/parallel.hpp"
#include "wvcl/random.hpp"

namespace wvcl {

using Json = nlohmann::ordered_json;

Featurizer::Featurizer(FeatureSettings settings) : settings_(std::move(settings)) {
    if (settings_.domain() == FeatureDomain::Wavelet) {
        bank_.emplace(build_scale_grid(settings_.octaves, settings_.voices, settings_.morse), settings_.morse,
                      settings_.window);
    }
}

FeatureVector Featurizer::operator()(const ComplexFrame& window) const {
    switch (settings_.domain()) {
        case FeatureDomain::Time: return time_domain_features(window, settings_.kinds(), settings_.component);
        case FeatureDomain::Frequency:
            return frequency_domain_features(window, settings_.kinds(), settings_.component);
        case FeatureDomain::Wavelet: return wavelet_feature_vector(window, *bank_, settings_.kinds());
    }
    throw InvalidInput("Featurizer: unknown domain");
}

SefdmConfig waveform_for(const ExperimentConfig& config, double alpha) {
    return SefdmConfig(config.signal.n_subcarriers, alpha, config.signal.oversampling);
}

ComplexFrame simulate_symbol(const ExperimentConfig& config, const SefdmConfig& waveform,
                             const RealVector& esn0_mix_db, std::uint64_t seed, double* drawn_esn0_db) {
    if (esn0_mix_db.empty()) throw InvalidInput("simulate_symbol: empty Es/N0 mix");
    Rng bit_rng(stream_seed(seed, Stream::Bits));
    const auto bits = random_bits(2 * waveform.n_subcarriers(), bit_rng);
    ComplexFrame frame = generate_symbol_ifft(waveform, map_qpsk(bits));
    frame.sample_rate_hz = config.signal.sample_rate_hz;

    if (config.channel.multipath) {
        ChannelProfile profile = config.channel.profile();
        if (profile.regenerate_per_symbol()) profile = profile.with_seed(stream_seed(seed, Stream::Fading));
        frame = apply_multipath(frame, profile);
    }
    const HardwareImpairments hw = config.channel.hardware(config.signal.sample_rate_hz);
    if (hw.enabled()) frame = apply_hardware(frame, hw, stream_seed(seed, Stream::Hardware));

    double esn0 = esn0_mix_db.front();
    if (esn0_mix_db.size() > 1) {
        Rng draw(stream_seed(seed, Stream::EsN0Draw));
        esn0 = esn0_mix_db[std::uniform_int_distribution<std::size_t>(0, esn0_mix_db.size() - 1)(draw)];
    }
    if (drawn_esn0_db != nullptr) *drawn_esn0_db = esn0;
    return apply_awgn(frame, EsN0{esn0}, stream_seed(seed, Stream::Noise));
}

ComplexFrame receive_window(const ComplexFrame& symbol, std::size_t window, std::uint64_t seed) {
    return random_truncate(normalize_power(symbol), window, stream_seed(seed, Stream::Truncation));
}

Dataset build_dataset(const ExperimentConfig& config, const SignalPattern& pattern, const RealVector& esn0_mix_db,
                      std::size_t per_class, std::uint64_t base_seed) {
    if (per_class < 1) throw InvalidInput("build_dataset: per-class count must be >= 1");
    if (pattern.alphas.empty()) throw InvalidInput("build_dataset: empty class set");
    const Featurizer featurize(config.features);
    std::vector<SefdmConfig> waveforms;
    for (double a : pattern.alphas) waveforms.push_back(waveform_for(config, a));

    const std::size_t total = per_class * pattern.alphas.size();
    const std::size_t dims = config.features.feature_length();
    Dataset ds;
    ds.features = FeatureMatrix(total, dims);
    ds.labels.resize(total);
    ds.meta.resize(total);
    parallel_for(total, [&](std::size_t index) {
        const std::size_t cls = index / per_class;
        const std::uint64_t seed = symbol_seed(base_seed, index);
        double esn0 = 0.0;
        const ComplexFrame symbol = simulate_symbol(config, waveforms[cls], esn0_mix_db, seed, &esn0);
        FeatureVector fv = featurize(receive_window(symbol, config.features.window, seed));
        if (fv.values.size() != dims) throw InvalidInput("build_dataset: unexpected feature length");
        std::copy(fv.values.begin(), fv.values.end(), ds.features.row(index).begin());
        ds.labels[index] = static_cast<int>(cls);
        ds.meta[index] = FeatureMeta{pattern.alphas[cls], esn0, fv.meta.domain};
    });
    return ds;
}

std::uint64_t train_seed(std::uint64_t protocol_seed) { return mix_seed(protocol_seed ^ 0x545241494eULL); }

std::uint64_t test_seed(std::uint64_t protocol_seed, double esn0_db) {
    return mix_seed(protocol_seed ^ 0x54455354ULL ^ mix_seed(std::bit_cast<std::uint64_t>(esn0_db)));
}

Dataset build_dataset(const ExperimentConfig& config, DatasetRole role) {
    const ProtocolSettings& p = config.protocol;
    if (role == DatasetRole::Train)
        return build_dataset(config, p.signal_pattern(), p.train_esn0_db, p.per_class_train, train_seed(p.seed));
    return build_dataset(config, p.signal_pattern(), p.train_esn0_db, p.per_class_test,
                         mix_seed(test_seed(p.seed, 0.0) ^ 0x4d4958ULL));
}

EcocModel run_protocol(const ExperimentConfig& config) {
    config.validate();
    const Dataset train = build_dataset(config, DatasetRole::Train);
    EcocModel model =
        train_ecoc(train.features, train.labels, config.protocol.signal_pattern().alphas, config.classifier.train_options());
    Json meta;
    meta["feature_pipeline_version"] = kFeaturePipelineVersion;
    meta["feature_length"] = config.features.feature_length();
    meta["kernel_gamma_resolved"] = model.learners.front().kernel.gamma;
    meta["train_seed"] = train_seed(config.protocol.seed);
    meta["train_rows"] = train.features.rows();
    meta["config"] = Json::parse(to_json_text(config));
    model.metadata = meta.dump();
    return model;
}

ExperimentConfig config_from_model(const EcocModel& model) {
    Json meta;
    try {
        meta = Json::parse(model.metadata);
    } catch (const nlohmann::json::parse_error&) {
        throw IncompatibleError("model carries no readable pipeline metadata");
    }
    if (!meta.contains("feature_pipeline_version") || !meta.contains("config"))
        throw IncompatibleError("model metadata lacks pipeline version or configuration");
    const int version = meta["feature_pipeline_version"].get<int>();
    if (version != kFeaturePipelineVersion) {
        throw IncompatibleError("model was trained with feature pipeline v" + std::to_string(version) +
                                ", this build implements v" + std::to_string(kFeaturePipelineVersion));
    }
    ExperimentConfig config = parse_config(meta["config"].dump());
    if (config.features.feature_length() != model.feature_dimension()) {
        throw IncompatibleError("model dimension " + std::to_string(model.feature_dimension()) +
                                " does not match its recorded feature mode " + to_string(config.features.mode));
    }
    return config;
}

namespace {

void require_compatible(const EcocModel& model, const ExperimentConfig& config) {
    const FeatureSettings& f = config.features;
    if (f.feature_length() != model.feature_dimension()) {
        throw IncompatibleError("feature mode " + to_string(f.mode) + " yields length " +
                                std::to_string(f.feature_length()) + " but the model expects " +
                                std::to_string(model.feature_dimension()));
    }
    const ExperimentConfig recorded = config_from_model(model);
    const FeatureSettings& r = recorded.features;
    if (r.mode != f.mode || r.kinds() != f.kinds() || r.component != f.component || r.window != f.window || r.octaves != f.octaves ||
        r.voices != f.voices || r.morse.gamma != f.morse.gamma || r.morse.beta != f.morse.beta) {
        throw IncompatibleError("feature settings differ from those the model was trained with (" + to_string(r.mode) +
                                ")");
    }
}

}  // namespace

SweepResult sweep(const EcocModel& model, const ExperimentConfig& config, const RealVector& test_esn0_db,
                  std::size_t per_class_test) {
    require_compatible(model, config);
    SignalPattern pattern = config.protocol.signal_pattern();
    pattern.alphas = model.class_values;

    SweepResult result;
    result.class_values = model.class_values;
    Json tests = Json::array();
    for (double esn0 : test_esn0_db) {
        const std::uint64_t seed = test_seed(config.protocol.seed, esn0);
        const Dataset test = build_dataset(config, pattern, {esn0}, per_class_test, seed);
        SweepPoint point;
        point.esn0_db = esn0;
        point.n_test = test.features.rows();
        point.evaluation = evaluate(model, test.features, test.labels);
        result.points.push_back(std::move(point));
        tests.push_back({{"esn0_db", format_number(esn0)}, {"seed", seed}});
    }

    Json prov;
    prov["model"] = Json::parse(model.metadata);
    prov["sweep"] = {{"per_class_test", per_class_test}, {"test_sets", tests}};
    prov["sweep_config"] = Json::parse(to_json_text(config));
    result.provenance = prov.dump(2) + "\n";
    return result;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::filesystem::path> emit_reports(const SweepResult& result, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create '" + out_dir.string() + "': " + ec.message());

    std::vector<std::filesystem::path> written;
    std::string sweep_csv = "test_esn0_db,accuracy,n_test\n";
    for (const SweepPoint& p : result.points) {
        sweep_csv += format_number(p.esn0_db) + "," + format_number(p.evaluation.accuracy) + "," +
                     std::to_string(p.n_test) + "\n";
    }
    written.push_back(out_dir / "accuracy_sweep.csv");
    write_file(written.back(), sweep_csv);

    for (const SweepPoint& p : result.points) {
        std::string csv;
        for (std::size_t k = 0; k < result.class_values.size(); ++k)
            csv += (k ? "," : "") + format_number(result.class_values[k]);
        csv += "\n";
        for (const auto& row : p.evaluation.confusion) {
            for (std::size_t k = 0; k < row.size(); ++k) csv += (k ? "," : "") + std::to_string(row[k]);
            csv += "\n";
        }
        written.push_back(out_dir / ("confusion_" + format_number(p.esn0_db) + ".csv"));
        write_file(written.back(), csv);
    }

    written.push_back(out_dir / "protocol.meta");
    write_file(written.back(), result.provenance);
    return written;
}

}  // namespace wvcl
