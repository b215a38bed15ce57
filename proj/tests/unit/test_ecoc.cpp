#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "wvcl/ecoc.hpp"
#include "wvcl/error.hpp"

using namespace wvcl;

namespace {

struct Labeled {
    FeatureMatrix x;
    std::vector<int> y;
};

// Gaussian clusters centred on the corners of a square (scaled by `sep`).
Labeled clusters(std::size_t classes, std::size_t per_class, double sep, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.3);
    Labeled d;
    d.x = FeatureMatrix(0, 3);
    for (std::size_t c = 0; c < classes; ++c)
        for (std::size_t i = 0; i < per_class; ++i) {
            const double row[3] = {sep * double(c % 2) + g(rng), sep * double(c / 2) + g(rng), g(rng)};
            d.x.append_row(row);
            d.y.push_back(int(c));
        }
    return d;
}

RealVector values(std::size_t k) {
    RealVector v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(1.0 - 0.1 * double(i));
    return v;
}

}  // namespace

TEST_SUITE("ecoc") {

TEST_CASE("one-vs-one coding") {
    const auto c2 = build_ovo_coding(2);
    CHECK(c2.learners == 1);
    CHECK(c2.at(0, 0) == 1);
    CHECK(c2.at(1, 0) == -1);
    CHECK(build_ovo_coding(4).learners == 6);
    CHECK(build_ovo_coding(7).learners == 21);
    CHECK_THROWS_AS(build_ovo_coding(1), InvalidInput);

    const auto c = build_ovo_coding(5);
    std::set<std::vector<int>> columns;
    std::size_t l = 0;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j, ++l) {
            std::vector<int> col;
            for (std::size_t k = 0; k < 5; ++k) {
                const int expected = k == i ? 1 : (k == j ? -1 : 0);
                CHECK(c.at(k, l) == expected);
                col.push_back(c.at(k, l));
            }
            columns.insert(col);
        }
    CHECK(columns.size() == c.learners);
}

TEST_CASE("decoding rules") {
    const auto c = build_ovo_coding(3);  // pairs (0,1) (0,2) (1,2)
    const double f[] = {2.0, 0.5, -1.0};
    const auto lw = decode(c, f, Decoding::LossWeighted);
    CHECK(lw.losses[0] == doctest::Approx((0.0 + 0.25) / 2));
    CHECK(lw.losses[1] == doctest::Approx((1.5 + 1.0) / 2));
    CHECK(lw.losses[2] == doctest::Approx((0.75 + 0.0) / 2));
    CHECK(lw.label == 0);

    const auto hm = decode(c, f, Decoding::Hamming);
    CHECK(hm.losses[0] == doctest::Approx(0.0));
    CHECK(hm.losses[1] == doctest::Approx(1.0));
    CHECK(hm.losses[2] == doctest::Approx(0.5));

    const double tie[] = {0.0, 0.0, 0.0};
    CHECK(decode(c, tie, Decoding::LossWeighted).label == 0);
    const double wrong[] = {1.0};
    CHECK_THROWS_AS(decode(c, wrong, Decoding::LossWeighted), InvalidInput);
}

TEST_CASE("separable clusters") {
    const auto d = clusters(4, 30, 4.0, 1);
    EcocTrainOptions o;
    o.keep_alpha = true;
    const auto m = train_ecoc(d.x, d.y, values(4), o);
    CHECK(m.learners.size() == 6);
    CHECK(m.class_count() == 4);
    CHECK(m.learners.front().kernel.gamma == doctest::Approx(1.0 / 3.0));
    const auto ev = evaluate(m, d.x, d.y);
    CHECK(ev.accuracy == 1.0);

    REQUIRE(m.provenance.size() == 6);
    for (const auto& p : m.provenance) {
        CHECK(p.report.max_kkt_violation <= 1e-3);
        CHECK(p.training_rows.size() == 60);
        for (std::size_t r : p.training_rows)
            CHECK((std::size_t(d.y[r]) == p.positive_class || std::size_t(d.y[r]) == p.negative_class));
    }
}

TEST_CASE("indistinguishable classes are near chance") {
    auto d = clusters(3, 200, 4.0, 2);
    for (std::size_t i = 200; i < 400; ++i) {
        auto src = d.x.row(i - 200);
        std::copy(src.begin(), src.end(), d.x.row(i).begin());
    }
    const auto m = train_ecoc(d.x, d.y, values(3), {});
    const auto preds = predict_batch(m, d.x);
    std::size_t first = 0, total = 0;
    for (std::size_t i = 0; i < 400; ++i) {
        total += preds[i].label <= 1;
        first += preds[i].label == 0;
    }
    CHECK(total == 400);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < 400; ++i) correct += preds[i].label == d.y[i];
    CHECK(double(correct) / 400 == doctest::Approx(0.5).epsilon(0.1));
    for (std::size_t i = 400; i < 600; ++i) CHECK(preds[i].label == 2);
}

TEST_CASE("two classes reduce to the binary sign") {
    const auto d = clusters(2, 40, 3.0, 3);
    const auto m = train_ecoc(d.x, d.y, values(2), {});
    const auto dv = decision_values(m, d.x);
    const auto preds = predict_batch(m, d.x);
    for (std::size_t i = 0; i < d.y.size(); ++i) CHECK(preds[i].label == (dv[i][0] >= 0 ? 0 : 1));
}

TEST_CASE("feature rescaling does not change predictions") {
    const auto d = clusters(4, 25, 3.0, 4);
    const auto base = predict_batch(train_ecoc(d.x, d.y, values(4), {}), d.x);
    for (double c : {0.5, 2.0}) {
        auto x = d.x;
        for (auto& v : x.data()) v *= c;
        const auto p = predict_batch(train_ecoc(x, d.y, values(4), {}), x);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i].label == base[i].label);
    }
}

TEST_CASE("column permutation does not change predictions") {
    const auto d = clusters(4, 25, 2.0, 5);
    FeatureMatrix x(d.x.rows(), 3);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        x.row(r)[0] = d.x.row(r)[2];
        x.row(r)[1] = d.x.row(r)[0];
        x.row(r)[2] = d.x.row(r)[1];
    }
    const auto a = predict_batch(train_ecoc(d.x, d.y, values(4), {}), d.x);
    const auto b = predict_batch(train_ecoc(x, d.y, values(4), {}), x);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].label == b[i].label);
}

TEST_CASE("training is deterministic") {
    const auto d = clusters(4, 30, 1.5, 6);
    const auto a = train_ecoc(d.x, d.y, values(4), {});
    const auto b = train_ecoc(d.x, d.y, values(4), {});
    for (std::size_t l = 0; l < a.learners.size(); ++l) {
        CHECK(a.learners[l].bias == b.learners[l].bias);
        CHECK(a.learners[l].coef == b.learners[l].coef);
    }
}

TEST_CASE("evaluation") {
    const std::vector<int> truth{0, 0, 1, 1, 2, 2};
    const auto perfect = evaluate_predictions(truth, truth, 3);
    CHECK(perfect.accuracy == 1.0);
    for (std::size_t k = 0; k < 3; ++k) CHECK(perfect.confusion[k][k] == 2);

    const std::vector<int> constant(6, 1);
    const auto c = evaluate_predictions(truth, constant, 3);
    CHECK(c.accuracy == doctest::Approx(1.0 / 3.0));
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t row = 0;
        for (auto v : c.confusion[k]) row += v;
        CHECK(row == 2);
        CHECK(c.confusion[k][1] == 2);
    }
}

TEST_CASE("training input validation") {
    const auto d = clusters(3, 1, 1.0, 7);
    CHECK_THROWS_AS(train_ecoc(d.x, d.y, values(3), {}), InvalidInput);
    const auto e = clusters(2, 5, 1.0, 7);
    std::vector<int> same(e.y.size(), 0);
    CHECK_THROWS_AS(train_ecoc(e.x, same, values(2), {}), InvalidInput);
    CHECK_THROWS_AS(train_ecoc(e.x, e.y, values(1), {}), InvalidInput);
}

}  // TEST_SUITE
