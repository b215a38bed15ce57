#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wvcl/channel.hpp"
#include "wvcl/error.hpp"
#include "wvcl/experiment.hpp"
#include "wvcl/io.hpp"
#include "wvcl/random.hpp"

namespace fs = std::filesystem;
using namespace wvcl;

namespace {

int exit_code(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::InvalidInput: return 3;
        case ErrorCategory::DegenerateInput: return 4;
        case ErrorCategory::Io: return 5;
        case ErrorCategory::Format: return 6;
        case ErrorCategory::Incompatible: return 7;
        case ErrorCategory::Config: return 8;
    }
    return 1;
}

ExperimentConfig config_or_default(const std::string& path) {
    return path.empty() ? parse_config("{}") : load_config(path);
}

double parse_db(const std::string& text) {
    if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw InvalidInput("not an Es/N0 value: '" + text + "'");
    return v;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string config;
    std::string out;
    bool all_classes = false;
};

void run_generate(const GenerateArgs& a) {
    const ExperimentConfig c = config_or_default(a.config);
    const fs::path out = a.out.empty() ? c.output_directory : fs::path(a.out);
    fs::create_directories(out);

    const RealVector alphas = a.all_classes ? c.protocol.signal_pattern().alphas : RealVector{c.generate.alpha};
    const double esn0 = c.generate.esn0_db.value_or(std::numeric_limits<double>::infinity());
    for (double alpha : alphas) {
        const SefdmConfig waveform = waveform_for(c, alpha);
        const std::uint64_t base = mix_seed(c.generate.seed ^ std::bit_cast<std::uint64_t>(alpha));
        ComplexFrame batch;
        batch.sample_rate_hz = c.signal.sample_rate_hz;
        for (std::size_t i = 0; i < c.generate.symbols; ++i) {
            const ComplexFrame s = simulate_symbol(c, waveform, {esn0}, symbol_seed(base, i));
            batch.samples.insert(batch.samples.end(), s.samples.begin(), s.samples.end());
        }
        const std::string stem = "capture_alpha" + format_number(alpha);
        write_capture(out / (stem + ".iq"), IqCapture::from_frame(batch));

        nlohmann::ordered_json meta;
        meta["alpha"] = alpha;
        meta["effective_alpha"] = waveform.effective_alpha();
        meta["transform_length"] = waveform.transform_length();
        meta["symbols"] = c.generate.symbols;
        meta["samples_per_symbol"] = waveform.symbol_length();
        meta["sample_count"] = batch.size();
        meta["sample_rate_hz"] = c.signal.sample_rate_hz;
        meta["esn0_db"] = std::isinf(esn0) ? nlohmann::ordered_json(esn0 > 0 ? "inf" : "-inf")
                                           : nlohmann::ordered_json(esn0);
        meta["multipath"] = c.channel.multipath;
        meta["seed"] = c.generate.seed;
        write_text(out / (stem + ".json"), meta.dump(2) + "\n");
        std::cout << (out / (stem + ".iq")).string() << " samples=" << batch.size()
                  << " effective_alpha=" << format_number(waveform.effective_alpha()) << "\n";
    }
}

// ---- train ------------------------------------------------------------------

struct TrainArgs {
    std::string config;
    std::string model;
};

void run_train(const TrainArgs& a) {
    const ExperimentConfig c = config_or_default(a.config);
    const fs::path model_path = a.model.empty() ? c.output_directory / "model.wvcl" : fs::path(a.model);
    const EcocModel model = run_protocol(c);
    if (model_path.has_parent_path()) fs::create_directories(model_path.parent_path());
    save_model(model_path, model);

    double kkt = 0;
    std::size_t iterations = 0;
    for (const auto& p : model.provenance) {
        kkt = std::max(kkt, p.report.max_kkt_violation);
        iterations += p.report.iterations;
    }
    std::cout << "model          " << model_path.string() << "\n"
              << "pattern        " << to_string(c.protocol.pattern) << "\n"
              << "classes        " << model.class_count() << "\n"
              << "learners       " << model.learners.size() << "\n"
              << "feature mode   " << to_string(c.features.mode) << "\n"
              << "feature length " << model.feature_dimension() << "\n"
              << "training rows  " << c.protocol.per_class_train * model.class_count() << "\n"
              << "smo iterations " << iterations << "\n"
              << "max kkt        " << format_number(kkt) << "\n";
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
    std::string model;
    std::string config;
    std::vector<std::string> esn0;
    std::string out;
};

void run_sweep(const SweepArgs& a) {
    const EcocModel model = load_model(a.model);
    const ExperimentConfig c = a.config.empty() ? config_from_model(model) : load_config(a.config);
    RealVector points = c.protocol.test_esn0_db;
    if (!a.esn0.empty()) {
        points.clear();
        for (const auto& s : a.esn0) points.push_back(parse_db(s));
    }
    const SweepResult r = sweep(model, c, points, c.protocol.per_class_test);
    const fs::path out = a.out.empty() ? c.output_directory : fs::path(a.out);
    emit_reports(r, out);
    std::cout << "test_esn0_db,accuracy\n";
    for (const auto& p : r.points) std::cout << format_number(p.esn0_db) << "," << format_number(p.evaluation.accuracy) << "\n";
}

// ---- classify ---------------------------------------------------------------

struct ClassifyArgs {
    std::string model;
    std::string capture;
    std::size_t window = 0;
    std::string out;
};

void run_classify(const ClassifyArgs& a) {
    const EcocModel model = load_model(a.model);
    const ExperimentConfig c = config_from_model(model);
    const std::size_t window = a.window == 0 ? c.features.window : a.window;
    if (window != c.features.window) {
        throw IncompatibleError("window " + std::to_string(window) + " differs from the model's feature window " +
                                std::to_string(c.features.window));
    }
    const IqCapture capture = read_capture(a.capture);
    if (capture.sample_count() < window) {
        throw InvalidInput("capture holds " + std::to_string(capture.sample_count()) +
                           " samples, fewer than one window of " + std::to_string(window));
    }
    const Featurizer featurize(c.features);
    const std::size_t n_windows = capture.sample_count() / window;

    std::string csv = "window_index,predicted_alpha";
    for (double v : model.class_values) csv += ",loss_" + format_number(v);
    csv += "\n";
    std::vector<std::size_t> votes(model.class_count(), 0);
    for (std::size_t w = 0; w < n_windows; ++w) {
        const FeatureVector fv = featurize(normalize_power(capture.window(w * window, window)));
        const Prediction p = predict(model, fv.values);
        ++votes[std::size_t(p.label)];
        csv += std::to_string(w) + "," + format_number(model.class_values[std::size_t(p.label)]);
        for (double l : p.losses) csv += "," + format_number(l);
        csv += "\n";
    }
    if (a.out.empty())
        std::cout << csv;
    else
        write_text(a.out, csv);

    std::size_t best = 0;
    for (std::size_t k = 1; k < votes.size(); ++k)
        if (votes[k] > votes[best]) best = k;
    std::cerr << "majority alpha " << format_number(model.class_values[best]) << " (" << votes[best] << " of "
              << n_windows << " windows)\n";
}

// ---- scalogram --------------------------------------------------------------

struct ScalogramArgs {
    std::string capture;
    std::size_t index = 0;
    std::string part = "real";
    std::string config;
    std::string out;
};

void run_scalogram(const ScalogramArgs& a) {
    const ExperimentConfig c = config_or_default(a.config);
    const IqCapture capture = read_capture(a.capture);
    const std::size_t window = c.features.window;
    if ((a.index + 1) * window > capture.sample_count()) {
        throw InvalidInput("window " + std::to_string(a.index) + " of " + std::to_string(window) +
                           " samples exceeds the capture (" + std::to_string(capture.sample_count()) + " samples)");
    }
    const ComplexFrame frame = capture.window(a.index * window, window);
    std::vector<double> signal(window);
    for (std::size_t i = 0; i < window; ++i)
        signal[i] = a.part == "imag" ? frame.samples[i].imag() : frame.samples[i].real();
    const MorseFilterBank bank(build_scale_grid(c.features.octaves, c.features.voices, c.features.morse),
                               c.features.morse, window);
    const Scalogram s = bank.transform(signal);
    if (a.out.empty()) {
        write_scalogram(std::cout, s);
    } else {
        std::ofstream out(a.out, std::ios::trunc);
        if (!out) throw IoError("cannot open '" + a.out + "' for writing");
        write_scalogram(out, s);
        if (!out.flush()) throw IoError("failed writing '" + a.out + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SEFDM bandwidth-compression classifier: synthesis, training, evaluation and capture classification"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "synthesize IQ capture files");
    g->add_option("--config", gen.config, "experiment config (JSON)");
    g->add_option("--out", gen.out, "output directory (default: output.directory)");
    g->add_flag("--all-classes", gen.all_classes, "one capture per class of the protocol pattern");

    TrainArgs tr;
    auto* t = app.add_subcommand("train", "train and save a classifier");
    t->add_option("--config", tr.config, "experiment config (JSON)");
    t->add_option("--model", tr.model, "model path (default: <output.directory>/model.wvcl)");

    SweepArgs sw;
    auto* s = app.add_subcommand("sweep", "accuracy versus Es/N0 with confusion matrices");
    s->add_option("--model", sw.model, "trained model")->required();
    s->add_option("--config", sw.config, "experiment config (default: the one recorded in the model)");
    s->add_option("--esn0", sw.esn0, "test Es/N0 points in dB (inf/-inf allowed)")->delimiter(',');
    s->add_option("--out", sw.out, "report directory (default: output.directory)");

    ClassifyArgs cl;
    auto* k = app.add_subcommand("classify", "classify non-overlapping windows of a capture");
    k->add_option("--model", cl.model, "trained model")->required();
    k->add_option("--capture", cl.capture, "IQ capture file")->required();
    k->add_option("--window", cl.window, "window length (default: the model's)");
    k->add_option("--out", cl.out, "CSV path (default: stdout)");

    ScalogramArgs sc;
    auto* m = app.add_subcommand("scalogram", "dump the CWT magnitude matrix of one window");
    m->add_option("--capture", sc.capture, "IQ capture file")->required();
    m->add_option("--index", sc.index, "window index");
    m->add_option("--part", sc.part, "signal component")->check(CLI::IsMember({"real", "imag"}));
    m->add_option("--config", sc.config, "config supplying window and wavelet settings");
    m->add_option("--out", sc.out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 2;
    }

    try {
        if (*g) run_generate(gen);
        else if (*t) run_train(tr);
        else if (*s) run_sweep(sw);
        else if (*k) run_classify(cl);
        else if (*m) run_scalogram(sc);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", category_name(e.category()), e.what());
        return exit_code(e.category());
    } catch (const fs::filesystem_error& e) {
        std::fprintf(stderr, "error: io: %s\n", e.what());
        return exit_code(ErrorCategory::Io);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 1;
    }
    return 0;
}
