#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wvcl/svm.hpp"

namespace wvcl {

// K x L code matrix with entries in {-1, 0, +1}.
struct CodingMatrix {
    std::size_t classes = 0;
    std::size_t learners = 0;
    std::vector<std::int8_t> entries;  // row-major, classes x learners

    std::int8_t at(std::size_t k, std::size_t l) const { return entries[k * learners + l]; }
};

// One column per class pair (i < j) in lexicographic order: +1 at row i, -1 at row j.
CodingMatrix build_ovo_coding(std::size_t classes);

enum class Decoding : std::uint8_t { LossWeighted, Hamming };

struct LearnerProvenance {
    std::size_t positive_class = 0;
    std::size_t negative_class = 0;
    std::vector<std::size_t> training_rows;  // indices into the training set
    SmoReport report;
};

struct EcocModel {
    Standardizer standardizer;
    CodingMatrix coding;
    std::vector<BinarySvm> learners;
    RealVector class_values;  // e.g. the alpha of each class, index = class id
    Decoding decoding = Decoding::LossWeighted;
    std::string metadata;  // free-form provenance (JSON text), serialized with the model

    // Filled by train_ecoc only; not persisted.
    std::vector<LearnerProvenance> provenance;

    std::size_t class_count() const noexcept { return coding.classes; }
    std::size_t feature_dimension() const noexcept { return standardizer.mean.size(); }
};

struct EcocTrainOptions {
    double box_c = 1.0;
    KernelSpec kernel{KernelKind::Polynomial, 2, 0.0, 1.0};  // gamma <= 0 selects 1 / feature_dimension
    SmoOptions smo;
    Decoding decoding = Decoding::LossWeighted;
    bool keep_alpha = false;    // keep the full dual vectors in provenance
};

// labels[i] in [0, class_values.size()); each class needs at least 2 rows.
EcocModel train_ecoc(const FeatureMatrix& features, std::span<const int> labels, RealVector class_values,
                     const EcocTrainOptions& options);

struct Prediction {
    int label = 0;
    RealVector losses;  // per class
};

// Lowest-loss class over the given decision values (one per learner).
// LossWeighted: sum over nonzero code entries of max(0, 1 - m f)/2, divided by
// the number of nonzero entries in the row. Hamming uses (1 - sign(m f))/2.
// Ties go to the lowest class index.
Prediction decode(const CodingMatrix& coding, std::span<const double> decision_values, Decoding decoding);

Prediction predict(const EcocModel& model, std::span<const double> x);
std::vector<Prediction> predict_batch(const EcocModel& model, const FeatureMatrix& x);
// Raw learner outputs for standardized rows, one vector per row.
std::vector<RealVector> decision_values(const EcocModel& model, const FeatureMatrix& x);

struct Evaluation {
    double accuracy = 0.0;
    std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

Evaluation evaluate_predictions(std::span<const int> truth, std::span<const int> predicted, std::size_t classes);
Evaluation evaluate(const EcocModel& model, const FeatureMatrix& features, std::span<const int> labels);

}  // namespace wvcl
