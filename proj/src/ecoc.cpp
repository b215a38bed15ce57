#include "wvcl/ecoc.hpp"

#include <algorithm>
#include <string>

#include "wvcl/error.hpp"
#include "wvcl/parallel.hpp"

namespace wvcl {

CodingMatrix build_ovo_coding(std::size_t classes) {
    if (classes < 2) throw InvalidInput("build_ovo_coding: need at least 2 classes");
    CodingMatrix m;
    m.classes = classes;
    m.learners = classes * (classes - 1) / 2;
    m.entries.assign(m.classes * m.learners, 0);
    std::size_t col = 0;
    for (std::size_t i = 0; i < classes; ++i) {
        for (std::size_t j = i + 1; j < classes; ++j, ++col) {
            m.entries[i * m.learners + col] = 1;
            m.entries[j * m.learners + col] = -1;
        }
    }
    return m;
}

EcocModel train_ecoc(const FeatureMatrix& features, std::span<const int> labels, RealVector class_values,
                     const EcocTrainOptions& options) {
    const std::size_t k = class_values.size();
    if (k < 2) throw InvalidInput("train_ecoc: need at least 2 classes");
    if (labels.size() != features.rows()) throw InvalidInput("train_ecoc: label count differs from row count");
    std::vector<std::size_t> counts(k, 0);
    for (int label : labels) {
        if (label < 0 || static_cast<std::size_t>(label) >= k)
            throw InvalidInput("train_ecoc: label " + std::to_string(label) + " outside [0, " + std::to_string(k) + ")");
        ++counts[static_cast<std::size_t>(label)];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] < 2)
            throw InvalidInput("train_ecoc: class " + std::to_string(c) + " has " + std::to_string(counts[c]) +
                               " training rows, need at least 2");
    }

    EcocModel model;
    model.class_values = std::move(class_values);
    model.decoding = options.decoding;
    model.coding = build_ovo_coding(k);
    model.standardizer = fit_standardizer(features);
    const FeatureMatrix standardized = model.standardizer.apply(features);

    KernelSpec spec = options.kernel;
    if (!(spec.gamma > 0.0)) spec.gamma = 1.0 / static_cast<double>(std::max<std::size_t>(1, features.cols()));

    const std::size_t n_learners = model.coding.learners;
    model.learners.resize(n_learners);
    model.provenance.resize(n_learners);
    parallel_for(n_learners, [&](std::size_t l) {
        LearnerProvenance& prov = model.provenance[l];
        for (std::size_t c = 0; c < k; ++c) {
            if (model.coding.at(c, l) == 1) prov.positive_class = c;
            if (model.coding.at(c, l) == -1) prov.negative_class = c;
        }
        std::vector<int> y;
        for (std::size_t r = 0; r < labels.size(); ++r) {
            const auto c = static_cast<std::size_t>(labels[r]);
            if (c == prov.positive_class || c == prov.negative_class) {
                prov.training_rows.push_back(r);
                y.push_back(c == prov.positive_class ? 1 : -1);
            }
        }
        BinaryTrainResult trained =
            train_binary_svm(standardized.select_rows(prov.training_rows), y, options.box_c, spec, options.smo);
        model.learners[l] = std::move(trained.model);
        prov.report = std::move(trained.report);
        if (!options.keep_alpha) prov.report.alpha.clear();
    });
    return model;
}

Prediction decode(const CodingMatrix& coding, std::span<const double> values, Decoding decoding) {
    if (values.size() != coding.learners) throw InvalidInput("decode: decision value count differs from learner count");
    Prediction p;
    p.losses.assign(coding.classes, 0.0);
    for (std::size_t c = 0; c < coding.classes; ++c) {
        double loss = 0.0;
        std::size_t active = 0;
        for (std::size_t l = 0; l < coding.learners; ++l) {
            const int m = coding.at(c, l);
            if (m == 0) continue;
            ++active;
            const double z = m * values[l];
            if (decoding == Decoding::LossWeighted)
                loss += std::max(0.0, 1.0 - z) / 2.0;
            else
                loss += z > 0.0 ? 0.0 : (z < 0.0 ? 1.0 : 0.5);
        }
        p.losses[c] = active > 0 ? loss / static_cast<double>(active) : 0.0;
    }
    p.label = static_cast<int>(std::min_element(p.losses.begin(), p.losses.end()) - p.losses.begin());
    return p;
}

std::vector<RealVector> decision_values(const EcocModel& model, const FeatureMatrix& x) {
    if (x.cols() != model.feature_dimension()) {
        throw InvalidInput("predict: feature length " + std::to_string(x.cols()) + " differs from model dimension " +
                           std::to_string(model.feature_dimension()));
    }
    const FeatureMatrix standardized = model.standardizer.apply(x);
    std::vector<RealVector> per_learner(model.learners.size());
    parallel_for(model.learners.size(),
                 [&](std::size_t l) { per_learner[l] = model.learners[l].decision_batch(standardized); });
    std::vector<RealVector> per_row(x.rows(), RealVector(model.learners.size()));
    for (std::size_t l = 0; l < model.learners.size(); ++l)
        for (std::size_t r = 0; r < x.rows(); ++r) per_row[r][l] = per_learner[l][r];
    return per_row;
}

std::vector<Prediction> predict_batch(const EcocModel& model, const FeatureMatrix& x) {
    const std::vector<RealVector> values = decision_values(model, x);
    std::vector<Prediction> out;
    out.reserve(values.size());
    for (const RealVector& v : values) out.push_back(decode(model.coding, v, model.decoding));
    return out;
}

Prediction predict(const EcocModel& model, std::span<const double> x) {
    if (x.size() != model.feature_dimension()) {
        throw InvalidInput("predict: feature length " + std::to_string(x.size()) + " differs from model dimension " +
                           std::to_string(model.feature_dimension()));
    }
    const RealVector z = model.standardizer.apply(x);
    RealVector values(model.learners.size());
    for (std::size_t l = 0; l < model.learners.size(); ++l) values[l] = model.learners[l].decision(z);
    return decode(model.coding, values, model.decoding);
}

Evaluation evaluate_predictions(std::span<const int> truth, std::span<const int> predicted, std::size_t classes) {
    if (truth.size() != predicted.size()) throw InvalidInput("evaluate: label count mismatch");
    if (truth.empty()) throw InvalidInput("evaluate: empty test set");
    Evaluation e;
    e.confusion.assign(classes, std::vector<std::size_t>(classes, 0));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const auto t = static_cast<std::size_t>(truth[i]);
        const auto p = static_cast<std::size_t>(predicted[i]);
        if (t >= classes || p >= classes) throw InvalidInput("evaluate: label out of range");
        ++e.confusion[t][p];
        if (t == p) ++correct;
    }
    e.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
    return e;
}

Evaluation evaluate(const EcocModel& model, const FeatureMatrix& features, std::span<const int> labels) {
    const std::vector<Prediction> preds = predict_batch(model, features);
    std::vector<int> predicted;
    predicted.reserve(preds.size());
    for (const Prediction& p : preds) predicted.push_back(p.label);
    return evaluate_predictions(labels, predicted, model.class_count());
}

}  // namespace wvcl
