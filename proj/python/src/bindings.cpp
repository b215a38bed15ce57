#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wvcl/channel.hpp"
#include "wvcl/cwt.hpp"
#include "wvcl/ecoc.hpp"
#include "wvcl/error.hpp"
#include "wvcl/experiment.hpp"
#include "wvcl/io.hpp"
#include "wvcl/stats.hpp"
#include "wvcl/waveform.hpp"

namespace py = pybind11;
using namespace wvcl;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

ComplexFrame to_frame(const ComplexArray& a, double sample_rate_hz = 0.0) {
    if (a.ndim() != 1) throw InvalidInput("expected a 1-D complex array");
    return ComplexFrame{ComplexVector(a.data(), a.data() + a.size()), sample_rate_hz};
}

ComplexArray to_array(const ComplexVector& v) {
    ComplexArray out(py::ssize_t(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

RealArray to_array(const RealVector& v) {
    RealArray out(py::ssize_t(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

FeatureMatrix to_matrix(const RealArray& a) {
    if (a.ndim() != 2) throw InvalidInput("expected a 2-D feature array");
    FeatureMatrix m(std::size_t(a.shape(0)), std::size_t(a.shape(1)));
    std::copy(a.data(), a.data() + a.size(), m.data().begin());
    return m;
}

RealArray to_array(const FeatureMatrix& m) {
    RealArray out({py::ssize_t(m.rows()), py::ssize_t(m.cols())});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

std::vector<int> to_labels(const IntArray& a) { return std::vector<int>(a.data(), a.data() + a.size()); }

StatSet to_kinds(const std::vector<std::string>& names) {
    StatSet s;
    for (const auto& n : names) s.insert(stat_kind_from_string(n));
    return s;
}

py::array_t<std::int64_t> confusion_array(const Evaluation& e) {
    const auto k = py::ssize_t(e.confusion.size());
    py::array_t<std::int64_t> out({k, k});
    auto r = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < k; ++i)
        for (py::ssize_t j = 0; j < k; ++j) r(i, j) = std::int64_t(e.confusion[std::size_t(i)][std::size_t(j)]);
    return out;
}

QpskVector symbols_for(std::size_t n_subcarriers, const std::optional<std::vector<std::uint8_t>>& bits,
                       std::uint64_t seed) {
    if (bits) return map_qpsk(*bits);
    Rng rng(seed);
    return map_qpsk(random_bits(2 * n_subcarriers, rng));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "SEFDM bandwidth-compression classification core";

    static py::exception<Error> base(m, "WvclError", PyExc_RuntimeError);
    static py::exception<InvalidInput> invalid(m, "InvalidInputError", base.ptr());
    static py::exception<DegenerateInput> degenerate(m, "DegenerateInputError", base.ptr());
    static py::exception<IoError> io(m, "IoError", base.ptr());
    static py::exception<FormatError> format(m, "FormatError", base.ptr());
    static py::exception<IncompatibleError> incompatible(m, "IncompatibleError", base.ptr());
    static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidInput& e) {
            invalid(e.what());
        } catch (const DegenerateInput& e) {
            degenerate(e.what());
        } catch (const IoError& e) {
            io(e.what());
        } catch (const FormatError& e) {
            format(e.what());
        } catch (const IncompatibleError& e) {
            incompatible(e.what());
        } catch (const ConfigError& e) {
            config(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    // ---- waveform -----------------------------------------------------------
    m.def("effective_alpha",
          [](double alpha, std::size_t n_subcarriers, std::size_t oversampling) {
              return SefdmConfig(n_subcarriers, alpha, oversampling).effective_alpha();
          },
          py::arg("alpha"), py::arg("n_subcarriers") = 256, py::arg("oversampling") = 8);

    m.def("generate_symbol",
          [](double alpha, std::optional<std::vector<std::uint8_t>> bits, std::uint64_t seed,
             std::size_t n_subcarriers, std::size_t oversampling, const std::string& method) {
              const SefdmConfig cfg(n_subcarriers, alpha, oversampling);
              const QpskVector s = symbols_for(n_subcarriers, bits, seed);
              if (s.size() != n_subcarriers) throw InvalidInput("bits must encode n_subcarriers QPSK symbols");
              if (method == "ifft") return to_array(generate_symbol_ifft(cfg, s).samples);
              if (method == "direct") return to_array(generate_symbol_direct(cfg, s).samples);
              throw InvalidInput("method must be 'ifft' or 'direct'");
          },
          py::arg("alpha"), py::arg("bits") = py::none(), py::arg("seed") = 0, py::arg("n_subcarriers") = 256,
          py::arg("oversampling") = 8, py::arg("method") = "ifft",
          "One SEFDM symbol from explicit bits or from random bits drawn with `seed`.");

    m.def("ici_components",
          [](double alpha, const ComplexArray& symbols, std::size_t oversampling) {
              const auto frame = to_frame(symbols);
              const SefdmConfig cfg(frame.size(), alpha, oversampling);
              return to_array(ici_components(cfg, QpskVector(frame.samples)));
          },
          py::arg("alpha"), py::arg("symbols"), py::arg("oversampling") = 8);

    // ---- channel ------------------------------------------------------------
    m.def("apply_awgn",
          [](const ComplexArray& x, double esn0_db, std::uint64_t seed) {
              return to_array(apply_awgn(to_frame(x), EsN0{esn0_db}, seed).samples);
          },
          py::arg("x"), py::arg("esn0_db"), py::arg("seed"));
    m.def("apply_multipath",
          [](const ComplexArray& x, std::uint64_t seed) {
              return to_array(apply_multipath(to_frame(x), ChannelProfile::default_profile(seed)).samples);
          },
          py::arg("x"), py::arg("seed"), "Default three-tap Rayleigh profile.");
    m.def("normalize_power", [](const ComplexArray& x) { return to_array(normalize_power(to_frame(x)).samples); },
          py::arg("x"));
    m.def("random_truncate",
          [](const ComplexArray& x, std::size_t window, std::uint64_t seed) {
              return to_array(random_truncate(to_frame(x), window, seed).samples);
          },
          py::arg("x"), py::arg("window"), py::arg("seed"));

    // ---- features -----------------------------------------------------------
    m.def("stat",
          [](const RealArray& values, const std::string& kind) {
              return stat(std::span<const double>(values.data(), std::size_t(values.size())),
                          stat_kind_from_string(kind));
          },
          py::arg("values"), py::arg("kind"));

    const std::vector<std::string> all_kinds{"Mean", "Variance", "Skewness", "MaxMinRatio", "Iqr"};
    m.def("time_features",
          [](const ComplexArray& x, const std::vector<std::string>& kinds, const std::string& component) {
              return to_array(
                  time_domain_features(to_frame(x), to_kinds(kinds), sample_component_from_string(component)).values);
          },
          py::arg("x"), py::arg("kinds") = all_kinds, py::arg("component") = "magnitude");
    m.def("frequency_features",
          [](const ComplexArray& x, const std::vector<std::string>& kinds, const std::string& component) {
              return to_array(frequency_domain_features(to_frame(x), to_kinds(kinds),
                                                        sample_component_from_string(component))
                                  .values);
          },
          py::arg("x"), py::arg("kinds") = all_kinds, py::arg("component") = "magnitude");

    m.def("cwt",
          [](const RealArray& signal, std::size_t octaves, std::size_t voices, double gamma, double beta) {
              const MorseParams params{gamma, beta};
              const Scalogram s = cwt(std::span<const double>(signal.data(), std::size_t(signal.size())),
                                      build_scale_grid(octaves, voices, params), params);
              RealArray out({py::ssize_t(s.n_scales), py::ssize_t(s.n_time)});
              std::copy(s.magnitudes.begin(), s.magnitudes.end(), out.mutable_data());
              return out;
          },
          py::arg("signal"), py::arg("octaves") = 7, py::arg("voices") = 10, py::arg("gamma") = 3.0,
          py::arg("beta") = 20.0, "Magnitude scalogram, one row per scale.");

    m.def("wavelet_features",
          [](const ComplexArray& x, const std::vector<std::string>& kinds, std::size_t octaves, std::size_t voices,
             double gamma, double beta) {
              const MorseParams params{gamma, beta};
              const auto frame = to_frame(x);
              const MorseFilterBank bank(build_scale_grid(octaves, voices, params), params, frame.size());
              return to_array(wavelet_feature_vector(frame, bank, to_kinds(kinds)).values);
          },
          py::arg("x"), py::arg("kinds") = std::vector<std::string>{"Variance", "Iqr"}, py::arg("octaves") = 7,
          py::arg("voices") = 10, py::arg("gamma") = 3.0, py::arg("beta") = 20.0);

    // ---- configuration and experiments ---------------------------------------
    py::class_<ExperimentConfig>(m, "Config")
        .def(py::init([](const std::string& json_text) { return parse_config(json_text); }),
             py::arg("json_text") = "{}")
        .def("json", [](const ExperimentConfig& c) { return to_json_text(c); })
        .def_property_readonly("feature_length", [](const ExperimentConfig& c) { return c.features.feature_length(); })
        .def_property_readonly("class_values",
                               [](const ExperimentConfig& c) { return c.protocol.signal_pattern().alphas; })
        .def("__repr__", [](const ExperimentConfig& c) { return "Config(" + to_json_text(c, -1) + ")"; });
    m.def("load_config", &load_config, py::arg("path"));

    m.def("build_dataset",
          [](const ExperimentConfig& c, const std::string& role) {
              if (role != "train" && role != "test") throw InvalidInput("role must be 'train' or 'test'");
              Dataset ds;
              {
                  py::gil_scoped_release release;
                  ds = build_dataset(c, role == "train" ? DatasetRole::Train : DatasetRole::Test);
              }
              IntArray labels(py::ssize_t(ds.labels.size()));
              std::copy(ds.labels.begin(), ds.labels.end(), labels.mutable_data());
              return py::make_tuple(to_array(ds.features), labels);
          },
          py::arg("config"), py::arg("role") = "train");

    py::class_<EcocModel>(m, "Model")
        .def_property_readonly("class_values", [](const EcocModel& e) { return e.class_values; })
        .def_property_readonly("learner_count", [](const EcocModel& e) { return e.learners.size(); })
        .def_property_readonly("feature_dimension", &EcocModel::feature_dimension)
        .def_property_readonly("metadata", [](const EcocModel& e) { return e.metadata; })
        .def_property_readonly("max_kkt_violation",
                               [](const EcocModel& e) {
                                   double v = 0;
                                   for (const auto& p : e.provenance) v = std::max(v, p.report.max_kkt_violation);
                                   return v;
                               })
        .def("predict",
             [](const EcocModel& e, const RealArray& x) {
                 const auto preds = predict_batch(e, to_matrix(x));
                 IntArray out(py::ssize_t(preds.size()));
                 for (std::size_t i = 0; i < preds.size(); ++i) out.mutable_data()[i] = preds[i].label;
                 return out;
             },
             py::arg("features"))
        .def("losses",
             [](const EcocModel& e, const RealArray& x) {
                 const auto preds = predict_batch(e, to_matrix(x));
                 RealArray out({py::ssize_t(preds.size()), py::ssize_t(e.class_count())});
                 double* d = out.mutable_data();
                 for (const auto& p : preds) d = std::copy(p.losses.begin(), p.losses.end(), d);
                 return out;
             },
             py::arg("features"))
        .def("evaluate",
             [](const EcocModel& e, const RealArray& x, const IntArray& y) {
                 const Evaluation ev = evaluate(e, to_matrix(x), to_labels(y));
                 return py::make_tuple(ev.accuracy, confusion_array(ev));
             },
             py::arg("features"), py::arg("labels"))
        .def("save", [](const EcocModel& e, const std::filesystem::path& p) { save_model(p, e); }, py::arg("path"))
        .def("to_bytes",
             [](const EcocModel& e) {
                 const auto b = encode_model(e);
                 return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
             })
        .def_static("from_bytes",
                    [](const py::bytes& b) {
                        const std::string s = b;
                        return decode_model(std::vector<std::uint8_t>(s.begin(), s.end()));
                    })
        .def("config", &config_from_model);
    m.def("load_model", &load_model, py::arg("path"));

    m.def("train",
          [](const RealArray& x, const IntArray& y, RealVector class_values, double box_c, int degree,
             std::optional<double> gamma, double coef0, double tol) {
              EcocTrainOptions o;
              o.box_c = box_c;
              o.kernel.degree = degree;
              o.kernel.gamma = gamma.value_or(0.0);
              o.kernel.coef0 = coef0;
              o.smo.tol = tol;
              const FeatureMatrix features = to_matrix(x);
              const std::vector<int> labels = to_labels(y);
              py::gil_scoped_release release;
              return train_ecoc(features, labels, std::move(class_values), o);
          },
          py::arg("features"), py::arg("labels"), py::arg("class_values"), py::arg("C") = 1.0, py::arg("degree") = 2,
          py::arg("gamma") = py::none(), py::arg("coef0") = 1.0, py::arg("tol") = 1e-3,
          "One-vs-one SVM ensemble on standardized features; gamma defaults to 1 / dimension.");

    m.def("run_protocol",
          [](const ExperimentConfig& c) {
              py::gil_scoped_release release;
              return run_protocol(c);
          },
          py::arg("config"));

    m.def("sweep",
          [](const EcocModel& model, const ExperimentConfig& c, std::optional<RealVector> esn0_db,
             std::optional<std::size_t> per_class_test, std::optional<std::filesystem::path> out_dir) {
              SweepResult r;
              {
                  py::gil_scoped_release release;
                  r = sweep(model, c, esn0_db.value_or(c.protocol.test_esn0_db),
                            per_class_test.value_or(c.protocol.per_class_test));
                  if (out_dir) emit_reports(r, *out_dir);
              }
              py::list points;
              for (const auto& p : r.points) {
                  py::dict d;
                  d["esn0_db"] = p.esn0_db;
                  d["accuracy"] = p.evaluation.accuracy;
                  d["n_test"] = p.n_test;
                  d["confusion"] = confusion_array(p.evaluation);
                  points.append(d);
              }
              return points;
          },
          py::arg("model"), py::arg("config"), py::arg("esn0_db") = py::none(), py::arg("per_class_test") = py::none(),
          py::arg("out_dir") = py::none());

    // ---- captures -----------------------------------------------------------
    m.def("read_capture",
          [](const std::filesystem::path& p) {
              const IqCapture c = read_capture(p);
              return py::make_tuple(to_array(c.to_frame().samples), c.sample_rate_hz);
          },
          py::arg("path"), "Returns (complex samples, sample_rate_hz).");
    m.def("write_capture",
          [](const std::filesystem::path& p, const ComplexArray& samples, double sample_rate_hz) {
              write_capture(p, IqCapture::from_frame(to_frame(samples, sample_rate_hz)));
          },
          py::arg("path"), py::arg("samples"), py::arg("sample_rate_hz"));
}
