#include <cstring>
#include <filesystem>
#include <random>
#include <sstream>

#include "doctest.h"
#include "wvcl/error.hpp"
#include "wvcl/io.hpp"

using namespace wvcl;

namespace {

IqCapture sample_capture(std::size_t n) {
    IqCapture c;
    c.sample_rate_hz = 200e3;
    std::mt19937 rng(1);
    std::normal_distribution<float> g;
    for (std::size_t i = 0; i < 2 * n; ++i) c.interleaved.push_back(g(rng));
    return c;
}

EcocModel tiny_model() {
    const auto x = FeatureMatrix::from_rows({{0, 0}, {0.2, 0.1}, {3, 3}, {3.1, 2.8}, {0, 3}, {0.2, 3.3}});
    const std::vector<int> y{0, 0, 1, 1, 2, 2};
    EcocTrainOptions o;
    o.decoding = Decoding::Hamming;
    EcocModel m = train_ecoc(x, y, {1.0, 0.9, 0.8}, o);
    m.metadata = R"({"note":"tiny"})";
    return m;
}

std::filesystem::path temp_path(const char* name) {
    return std::filesystem::temp_directory_path() / (std::string("wvcl_test_") + name);
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("capture header layout") {
    IqCapture c;
    c.sample_rate_hz = 1.0;
    c.interleaved = {1.0f, -2.0f};
    const auto bytes = encode_capture(c);
    REQUIRE(bytes.size() == kCaptureHeaderSize + 8);
    CHECK(std::memcmp(bytes.data(), "WVCLIQ1\0", 8) == 0);
    CHECK(bytes[8] == 1);
    CHECK(bytes[9] == 0);
    const std::uint8_t one_f64[8] = {0, 0, 0, 0, 0, 0, 0xf0, 0x3f};
    CHECK(std::memcmp(bytes.data() + 10, one_f64, 8) == 0);
    CHECK(bytes[18] == 1);
    for (int i = 19; i < 26; ++i) CHECK(bytes[std::size_t(i)] == 0);
    const std::uint8_t payload[8] = {0, 0, 0x80, 0x3f, 0, 0, 0, 0xc0};
    CHECK(std::memcmp(bytes.data() + 26, payload, 8) == 0);
}

TEST_CASE("capture round trip") {
    const auto c = sample_capture(1000);
    const auto d = decode_capture(encode_capture(c));
    CHECK(d.sample_rate_hz == c.sample_rate_hz);
    CHECK(d.interleaved == c.interleaved);

    const auto path = temp_path("cap.iq");
    write_capture(path, c);
    CHECK(read_capture(path).interleaved == c.interleaved);
    std::filesystem::remove(path);

    const auto frame = c.to_frame();
    CHECK(frame.size() == 1000);
    CHECK(frame.samples[3] == Complex(c.interleaved[6], c.interleaved[7]));
    CHECK(IqCapture::from_frame(frame).interleaved == c.interleaved);
    const auto w = c.window(10, 5);
    CHECK(w.size() == 5);
    CHECK(w.samples[0] == frame.samples[10]);
    CHECK_THROWS_AS(c.window(998, 5), InvalidInput);
}

TEST_CASE("capture format errors") {
    const auto good = encode_capture(sample_capture(4));
    auto bad_magic = good;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(decode_capture(bad_magic), FormatError);
    auto bad_version = good;
    bad_version[8] = 2;
    CHECK_THROWS_AS(decode_capture(bad_version), FormatError);
    auto short_payload = good;
    short_payload.pop_back();
    CHECK_THROWS_AS(decode_capture(short_payload), FormatError);
    CHECK_THROWS_AS(decode_capture(std::vector<std::uint8_t>(10, 0)), FormatError);
    CHECK_THROWS_AS(read_capture(temp_path("does_not_exist.iq")), IoError);
}

TEST_CASE("model round trip") {
    const auto m = tiny_model();
    const auto bytes = encode_model(m);
    const auto back = decode_model(bytes);
    CHECK(encode_model(back) == bytes);
    CHECK(back.metadata == m.metadata);
    CHECK(back.decoding == Decoding::Hamming);
    CHECK(back.class_values == m.class_values);
    const auto probe = FeatureMatrix::from_rows({{0.1, 0.0}, {2.9, 3.0}, {0.0, 2.9}, {1.5, 1.5}});
    const auto a = predict_batch(m, probe);
    const auto b = predict_batch(back, probe);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].label == b[i].label);
        CHECK(a[i].losses == b[i].losses);
    }

    const auto path = temp_path("model.bin");
    save_model(path, m);
    CHECK(encode_model(load_model(path)) == bytes);
    std::filesystem::remove(path);
}

TEST_CASE("model corruption") {
    const auto bytes = encode_model(tiny_model());
    auto flipped = bytes;
    flipped.back() ^= 0x40;
    CHECK_THROWS_AS(decode_model(flipped), FormatError);
    auto bad_magic = bytes;
    bad_magic[3] = 'x';
    CHECK_THROWS_AS(decode_model(bad_magic), FormatError);
    auto other_version = bytes;
    other_version[8] = 9;
    CHECK_THROWS_AS(decode_model(other_version), IncompatibleError);
    auto truncated = bytes;
    truncated.resize(bytes.size() - 3);
    CHECK_THROWS_AS(decode_model(truncated), FormatError);
}

TEST_CASE("scalogram dump") {
    Scalogram s{2, 3, {1, 2, 3, 4, 5, 6.5}};
    std::ostringstream out;
    write_scalogram(out, s);
    CHECK(out.str() ==
          "2 3\n1.000000000e+00 2.000000000e+00 3.000000000e+00\n4.000000000e+00 5.000000000e+00 6.500000000e+00\n");
}

TEST_CASE("error categories") {
    CHECK(category_name(ErrorCategory::Format) == std::string("format"));
    CHECK(category_name(ErrorCategory::Incompatible) == std::string("incompatible"));
    CHECK(FormatError("x").category() == ErrorCategory::Format);
    CHECK(DegenerateInput("x").category() == ErrorCategory::DegenerateInput);
}

}  // TEST_SUITE
