#include "wvcl/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wvcl/error.hpp"

namespace wvcl {

using Json = nlohmann::ordered_json;

SignalPattern SignalPattern::type_i() { return {PatternName::TypeI, {1.0, 0.9, 0.8, 0.7}}; }

SignalPattern SignalPattern::type_ii() { return {PatternName::TypeII, {1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7}}; }

SignalPattern SignalPattern::named(PatternName name) { return name == PatternName::TypeI ? type_i() : type_ii(); }

std::string to_string(PatternName p) { return p == PatternName::TypeI ? "TypeI" : "TypeII"; }

PatternName pattern_from_string(const std::string& s) {
    if (s == "TypeI") return PatternName::TypeI;
    if (s == "TypeII") return PatternName::TypeII;
    throw ConfigError("unknown signal pattern '" + s + "' (expected TypeI or TypeII)");
}

std::string to_string(FeatureMode m) {
    switch (m) {
        case FeatureMode::TStat: return "TStat";
        case FeatureMode::FStat: return "FStat";
        case FeatureMode::WaveletVar: return "WaveletVar";
        case FeatureMode::WaveletIqr: return "WaveletIqr";
        case FeatureMode::WaveletVarIqr: return "WaveletVarIqr";
    }
    return "?";
}

FeatureMode feature_mode_from_string(const std::string& s) {
    for (FeatureMode m : {FeatureMode::TStat, FeatureMode::FStat, FeatureMode::WaveletVar, FeatureMode::WaveletIqr,
                          FeatureMode::WaveletVarIqr}) {
        if (to_string(m) == s) return m;
    }
    throw ConfigError("unknown feature mode '" + s + "'");
}

ChannelProfile ChannelSettings::profile() const {
    return ChannelProfile(tap_delays, tap_powers_db, regenerate_per_symbol, seed);
}

HardwareImpairments ChannelSettings::hardware(double sample_rate_hz) const {
    HardwareImpairments hw;
    hw.random_phase = random_phase;
    hw.cfo_ppm = cfo_ppm;
    hw.carrier_hz = carrier_hz;
    hw.sample_rate_hz = sample_rate_hz;
    return hw;
}

FeatureDomain FeatureSettings::domain() const {
    switch (mode) {
        case FeatureMode::TStat: return FeatureDomain::Time;
        case FeatureMode::FStat: return FeatureDomain::Frequency;
        default: return FeatureDomain::Wavelet;
    }
}

StatSet FeatureSettings::kinds() const {
    switch (mode) {
        case FeatureMode::WaveletVar: return {StatKind::Variance};
        case FeatureMode::WaveletIqr: return {StatKind::Iqr};
        case FeatureMode::WaveletVarIqr: return {StatKind::Variance, StatKind::Iqr};
        default: break;
    }
    if (stat_kinds.empty()) return StatSet::all();
    StatSet s;
    for (StatKind k : stat_kinds) s.insert(k);
    return s;
}

std::size_t FeatureSettings::feature_length() const {
    const std::size_t k = kinds().size();
    return domain() == FeatureDomain::Wavelet ? 2 * octaves * voices * k : k;
}

EcocTrainOptions ClassifierSettings::train_options() const {
    EcocTrainOptions o;
    o.box_c = box_c;
    o.kernel.degree = kernel_degree;
    o.kernel.gamma = kernel_gamma.value_or(0.0);
    o.kernel.coef0 = coef0;
    o.smo.tol = tol;
    o.smo.max_iterations = max_iterations;
    o.decoding = decoding;
    return o;
}

SignalPattern ProtocolSettings::signal_pattern() const {
    SignalPattern p = SignalPattern::named(pattern);
    if (alphas) p.alphas = *alphas;
    return p;
}

void ExperimentConfig::validate() const {
    if (signal.n_subcarriers < 1 || signal.oversampling < 1) throw ConfigError("signal: sizes must be positive");
    if (features.window < 2 || features.window > signal.n_subcarriers * signal.oversampling)
        throw ConfigError("features.window must lie in [2, n_subcarriers * oversampling]");
    if (features.octaves < 1 || features.voices < 1) throw ConfigError("features: octaves and voices must be >= 1");
    features.morse.validate();
    if (classifier.kernel_degree < 1) throw ConfigError("classifier.kernel_degree must be >= 1");
    if (classifier.kernel_gamma && !(*classifier.kernel_gamma > 0.0))
        throw ConfigError("classifier.kernel_gamma must be positive");
    if (!(classifier.box_c > 0.0)) throw ConfigError("classifier.C must be positive");
    if (!(classifier.tol > 0.0)) throw ConfigError("classifier.tol must be positive");
    if (protocol.train_esn0_db.empty()) throw ConfigError("protocol.train_esn0_db must not be empty");
    if (protocol.per_class_train < 1 || protocol.per_class_test < 1)
        throw ConfigError("protocol: per-class counts must be >= 1");
    const SignalPattern p = protocol.signal_pattern();
    if (p.alphas.size() < 2) throw ConfigError("protocol: need at least 2 classes");
    for (double a : p.alphas) {
        if (!(a > 0.0 && a <= 1.0)) throw ConfigError("protocol.alphas: values must lie in (0, 1]");
    }
    if (!(generate.alpha > 0.0 && generate.alpha <= 1.0)) throw ConfigError("generate.alpha must lie in (0, 1]");
    if (generate.symbols < 1) throw ConfigError("generate.symbols must be >= 1");
    channel.profile();  // throws on a malformed profile
}

namespace {

void reject_unknown(const Json& obj, const std::string& section, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError("section '" + section + "' must be an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!keys.contains(key)) throw ConfigError("unknown key '" + section + "." + key + "'");
    }
}

template <typename T>
void read(const Json& obj, const char* key, T& out, const std::string& section) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for '" + section + "." + key + "': " + e.what());
    }
}

template <typename T>
void read_optional(const Json& obj, const char* key, std::optional<T>& out, const std::string& section) {
    if (!obj.contains(key)) return;
    if (obj.at(key).is_null()) {
        out.reset();
        return;
    }
    T value{};
    read(obj, key, value, section);
    out = value;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

// Es/N0 values may be given as numbers or as the strings "inf" / "-inf".
double db_value(const Json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError("bad Es/N0 value for '" + where + "': " + v.dump());
}

void read_db_list(const Json& obj, const char* key, RealVector& out, const std::string& section) {
    if (!obj.contains(key)) return;
    const Json& arr = obj.at(key);
    const std::string where = section + "." + key;
    if (!arr.is_array()) throw ConfigError("'" + where + "' must be an array");
    out.clear();
    for (const Json& v : arr) out.push_back(db_value(v, where));
}

Json db_json(double v) {
    if (std::isinf(v)) return Json(v > 0 ? "inf" : "-inf");
    return Json(v);
}

Json db_list_json(const RealVector& values) {
    Json arr = Json::array();
    for (double v : values) arr.push_back(db_json(v));
    return arr;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    Json root;
    try {
        root = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "<root>", {"signal", "channel", "features", "classifier", "protocol", "generate", "output"});
    ExperimentConfig c;

    if (root.contains("signal")) {
        const Json& s = root["signal"];
        reject_unknown(s, "signal", {"n_subcarriers", "oversampling", "sample_rate_hz", "modulation"});
        read(s, "n_subcarriers", c.signal.n_subcarriers, "signal");
        read(s, "oversampling", c.signal.oversampling, "signal");
        read(s, "sample_rate_hz", c.signal.sample_rate_hz, "signal");
        std::string modulation = "QPSK";
        read(s, "modulation", modulation, "signal");
        if (modulation != "QPSK") throw ConfigError("signal.modulation: only QPSK is supported");
    }
    if (root.contains("channel")) {
        const Json& s = root["channel"];
        reject_unknown(s, "channel",
                       {"multipath", "tap_delays", "tap_powers_db", "regenerate_per_symbol", "random_phase", "cfo_ppm",
                        "carrier_hz", "seed"});
        read(s, "multipath", c.channel.multipath, "channel");
        read(s, "tap_delays", c.channel.tap_delays, "channel");
        read(s, "tap_powers_db", c.channel.tap_powers_db, "channel");
        read(s, "regenerate_per_symbol", c.channel.regenerate_per_symbol, "channel");
        read(s, "random_phase", c.channel.random_phase, "channel");
        read(s, "cfo_ppm", c.channel.cfo_ppm, "channel");
        read(s, "carrier_hz", c.channel.carrier_hz, "channel");
        read(s, "seed", c.channel.seed, "channel");
    }
    if (root.contains("features")) {
        const Json& s = root["features"];
        reject_unknown(s, "features", {"mode", "stat_kinds", "component", "morse_gamma", "morse_beta", "octaves", "voices", "window"});
        std::string mode = to_string(c.features.mode);
        read(s, "mode", mode, "features");
        c.features.mode = feature_mode_from_string(mode);
        if (s.contains("stat_kinds")) {
            std::vector<std::string> names;
            read(s, "stat_kinds", names, "features");
            c.features.stat_kinds.clear();
            try {
                for (const std::string& n : names) c.features.stat_kinds.push_back(stat_kind_from_string(n));
            } catch (const InvalidInput& e) {
                throw ConfigError(std::string("features.stat_kinds: ") + e.what());
            }
        }
        if (s.contains("component")) {
            std::string component;
            read(s, "component", component, "features");
            try {
                c.features.component = sample_component_from_string(component);
            } catch (const InvalidInput& e) {
                throw ConfigError(std::string("features.component: ") + e.what());
            }
        }
        read(s, "morse_gamma", c.features.morse.gamma, "features");
        read(s, "morse_beta", c.features.morse.beta, "features");
        read(s, "octaves", c.features.octaves, "features");
        read(s, "voices", c.features.voices, "features");
        read(s, "window", c.features.window, "features");
    }
    if (root.contains("classifier")) {
        const Json& s = root["classifier"];
        reject_unknown(s, "classifier",
                       {"C", "kernel_degree", "kernel_gamma", "coef0", "tol", "max_iterations", "decoding"});
        read(s, "C", c.classifier.box_c, "classifier");
        read(s, "kernel_degree", c.classifier.kernel_degree, "classifier");
        read_optional(s, "kernel_gamma", c.classifier.kernel_gamma, "classifier");
        read(s, "coef0", c.classifier.coef0, "classifier");
        read(s, "tol", c.classifier.tol, "classifier");
        read(s, "max_iterations", c.classifier.max_iterations, "classifier");
        std::string decoding = "loss-weighted";
        read(s, "decoding", decoding, "classifier");
        if (decoding == "loss-weighted")
            c.classifier.decoding = Decoding::LossWeighted;
        else if (decoding == "hamming")
            c.classifier.decoding = Decoding::Hamming;
        else
            throw ConfigError("classifier.decoding must be 'loss-weighted' or 'hamming'");
    }
    if (root.contains("protocol")) {
        const Json& s = root["protocol"];
        reject_unknown(s, "protocol",
                       {"pattern", "alphas", "train_esn0_db", "per_class_train", "per_class_test", "test_esn0_db",
                        "seed"});
        std::string pattern = to_string(c.protocol.pattern);
        read(s, "pattern", pattern, "protocol");
        c.protocol.pattern = pattern_from_string(pattern);
        read_optional(s, "alphas", c.protocol.alphas, "protocol");
        read_db_list(s, "train_esn0_db", c.protocol.train_esn0_db, "protocol");
        read(s, "per_class_train", c.protocol.per_class_train, "protocol");
        read(s, "per_class_test", c.protocol.per_class_test, "protocol");
        read_db_list(s, "test_esn0_db", c.protocol.test_esn0_db, "protocol");
        read(s, "seed", c.protocol.seed, "protocol");
    }
    if (root.contains("generate")) {
        const Json& s = root["generate"];
        reject_unknown(s, "generate", {"alpha", "symbols", "esn0_db", "seed"});
        read(s, "alpha", c.generate.alpha, "generate");
        read(s, "symbols", c.generate.symbols, "generate");
        if (s.contains("esn0_db")) {
            if (s["esn0_db"].is_null())
                c.generate.esn0_db.reset();
            else
                c.generate.esn0_db = db_value(s["esn0_db"], "generate.esn0_db");
        }
        read(s, "seed", c.generate.seed, "generate");
    }
    if (root.contains("output")) {
        const Json& s = root["output"];
        reject_unknown(s, "output", {"directory"});
        std::string dir = c.output_directory.string();
        read(s, "directory", dir, "output");
        c.output_directory = dir;
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_json_text(const ExperimentConfig& c, int indent) {
    Json root;
    root["signal"] = {{"n_subcarriers", c.signal.n_subcarriers},
                      {"oversampling", c.signal.oversampling},
                      {"sample_rate_hz", c.signal.sample_rate_hz},
                      {"modulation", "QPSK"}};
    root["channel"] = {{"multipath", c.channel.multipath},
                       {"tap_delays", c.channel.tap_delays},
                       {"tap_powers_db", c.channel.tap_powers_db},
                       {"regenerate_per_symbol", c.channel.regenerate_per_symbol},
                       {"random_phase", c.channel.random_phase},
                       {"cfo_ppm", c.channel.cfo_ppm},
                       {"carrier_hz", c.channel.carrier_hz},
                       {"seed", c.channel.seed}};
    Json kinds = Json::array();
    for (StatKind k : c.features.stat_kinds) kinds.push_back(std::string(to_string(k)));
    root["features"] = {{"mode", to_string(c.features.mode)},
                        {"stat_kinds", kinds},
                        {"component", std::string(to_string(c.features.component))},
                        {"morse_gamma", c.features.morse.gamma},
                        {"morse_beta", c.features.morse.beta},
                        {"octaves", c.features.octaves},
                        {"voices", c.features.voices},
                        {"window", c.features.window}};
    root["classifier"] = {{"C", c.classifier.box_c},
                          {"kernel_degree", c.classifier.kernel_degree},
                          {"kernel_gamma", optional_json(c.classifier.kernel_gamma)},
                          {"coef0", c.classifier.coef0},
                          {"tol", c.classifier.tol},
                          {"max_iterations", c.classifier.max_iterations},
                          {"decoding", c.classifier.decoding == Decoding::Hamming ? "hamming" : "loss-weighted"}};
    root["protocol"] = {{"pattern", to_string(c.protocol.pattern)},
                        {"alphas", c.protocol.alphas ? Json(*c.protocol.alphas) : Json(nullptr)},
                        {"train_esn0_db", db_list_json(c.protocol.train_esn0_db)},
                        {"per_class_train", c.protocol.per_class_train},
                        {"per_class_test", c.protocol.per_class_test},
                        {"test_esn0_db", db_list_json(c.protocol.test_esn0_db)},
                        {"seed", c.protocol.seed}};
    root["generate"] = {{"alpha", c.generate.alpha},
                        {"symbols", c.generate.symbols},
                        {"esn0_db", c.generate.esn0_db ? db_json(*c.generate.esn0_db) : Json(nullptr)},
                        {"seed", c.generate.seed}};
    root["output"] = {{"directory", c.output_directory.string()}};
    return root.dump(indent);
}

}  // namespace wvcl
