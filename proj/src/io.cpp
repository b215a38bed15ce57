#include "wvcl/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <ostream>

#include "wvcl/error.hpp"

namespace wvcl {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

class ByteWriter {
public:
    template <typename T>
    void put(T value) {
        static_assert(std::is_trivially_copyable_v<T>);
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(std::begin(raw), std::end(raw));
        bytes_.insert(bytes_.end(), std::begin(raw), std::end(raw));
    }
    void put_bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        bytes_.insert(bytes_.end(), p, p + n);
    }
    void put_count(std::size_t n) { put(static_cast<std::uint64_t>(n)); }
    void put_reals(std::span<const double> v) {
        put_count(v.size());
        for (double x : v) put(x);
    }
    std::vector<std::uint8_t>& bytes() { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
};

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t size, const char* what) : data_(data), size_(size), what_(what) {}

    template <typename T>
    T get() {
        need(sizeof(T));
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, data_ + pos_, sizeof(T));
        if constexpr (std::endian::native == std::endian::big) std::reverse(std::begin(raw), std::end(raw));
        pos_ += sizeof(T);
        T value;
        std::memcpy(&value, raw, sizeof(T));
        return value;
    }
    void get_bytes(void* out, std::size_t n) {
        need(n);
        std::memcpy(out, data_ + pos_, n);
        pos_ += n;
    }
    // Count bounded by the bytes left, so a corrupt length cannot trigger a huge allocation.
    std::size_t get_count(std::size_t element_size) {
        const auto n = get<std::uint64_t>();
        if (element_size != 0 && n > (size_ - pos_) / element_size)
            throw FormatError(std::string(what_) + ": length field exceeds remaining data");
        return static_cast<std::size_t>(n);
    }
    RealVector get_reals() {
        RealVector v(get_count(sizeof(double)));
        for (double& x : v) x = get<double>();
        return v;
    }
    std::size_t remaining() const { return size_ - pos_; }

private:
    void need(std::size_t n) const {
        if (size_ - pos_ < n) throw FormatError(std::string(what_) + ": truncated data");
    }
    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
    const char* what_;
};

std::uint32_t crc32_of(const std::uint8_t* data, std::size_t size) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed in chunks.
    while (size > 0) {
        const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1u << 30));
        crc = crc32(crc, data, chunk);
        data += chunk;
        size -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return bytes;
}

void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

IqCapture IqCapture::from_frame(const ComplexFrame& frame) {
    IqCapture c;
    c.sample_rate_hz = frame.sample_rate_hz;
    c.interleaved.reserve(2 * frame.size());
    for (const Complex& z : frame.samples) {
        c.interleaved.push_back(static_cast<float>(z.real()));
        c.interleaved.push_back(static_cast<float>(z.imag()));
    }
    return c;
}

ComplexFrame IqCapture::to_frame() const { return window(0, sample_count()); }

ComplexFrame IqCapture::window(std::size_t offset, std::size_t count) const {
    if (offset + count > sample_count()) throw InvalidInput("IqCapture: window exceeds capture length");
    ComplexFrame f;
    f.sample_rate_hz = sample_rate_hz;
    f.samples.reserve(count);
    for (std::size_t i = offset; i < offset + count; ++i) f.samples.emplace_back(interleaved[2 * i], interleaved[2 * i + 1]);
    return f;
}

std::vector<std::uint8_t> encode_capture(const IqCapture& capture) {
    if (capture.interleaved.size() % 2 != 0) throw InvalidInput("encode_capture: odd number of I/Q values");
    ByteWriter w;
    w.put_bytes(kCaptureMagic, sizeof kCaptureMagic);
    w.put(kCaptureVersion);
    w.put(capture.sample_rate_hz);
    w.put(static_cast<std::uint64_t>(capture.sample_count()));
    for (float v : capture.interleaved) w.put(v);
    return std::move(w.bytes());
}

IqCapture decode_capture(const std::vector<std::uint8_t>& bytes) {
    ByteReader r(bytes.data(), bytes.size(), "capture");
    char magic[8];
    r.get_bytes(magic, sizeof magic);
    if (std::memcmp(magic, kCaptureMagic, sizeof magic) != 0) throw FormatError("capture: bad magic");
    const auto version = r.get<std::uint16_t>();
    if (version != kCaptureVersion) throw FormatError("capture: unsupported version " + std::to_string(version));
    IqCapture c;
    c.sample_rate_hz = r.get<double>();
    const auto count = r.get<std::uint64_t>();
    if (r.remaining() != count * 8) {
        throw FormatError("capture: payload holds " + std::to_string(r.remaining()) + " bytes, header declares " +
                          std::to_string(count) + " samples");
    }
    c.interleaved.resize(2 * count);
    for (float& v : c.interleaved) v = r.get<float>();
    return c;
}

void write_capture(const std::filesystem::path& path, const IqCapture& capture) {
    write_file_bytes(path, encode_capture(capture));
}

IqCapture read_capture(const std::filesystem::path& path) {
    try {
        return decode_capture(read_file_bytes(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> encode_model(const EcocModel& model) {
    const std::size_t dims = model.feature_dimension();
    ByteWriter p;
    p.put_count(model.metadata.size());
    p.put_bytes(model.metadata.data(), model.metadata.size());
    p.put_reals(model.class_values);
    p.put_reals(model.standardizer.mean);
    p.put_reals(model.standardizer.stddev);
    p.put_count(model.coding.classes);
    p.put_count(model.coding.learners);
    for (std::int8_t e : model.coding.entries) p.put(e);
    p.put(static_cast<std::uint8_t>(model.decoding));
    p.put_count(model.learners.size());
    for (const BinarySvm& svm : model.learners) {
        p.put(static_cast<std::uint8_t>(svm.kernel.kind));
        p.put(static_cast<std::int32_t>(svm.kernel.degree));
        p.put(svm.kernel.gamma);
        p.put(svm.kernel.coef0);
        p.put(svm.box_c);
        p.put(svm.bias);
        p.put_reals(svm.coef);
        if (svm.support_vectors.rows() != svm.coef.size() || (svm.coef.size() > 0 && svm.support_vectors.cols() != dims))
            throw InvalidInput("encode_model: learner support vectors inconsistent with coefficients");
        for (double v : svm.support_vectors.data()) p.put(v);
    }
    const std::vector<std::uint8_t>& payload = p.bytes();

    ByteWriter w;
    w.put_bytes(kModelMagic, sizeof kModelMagic);
    w.put(kModelVersion);
    w.put(static_cast<std::uint64_t>(payload.size()));
    w.put(crc32_of(payload.data(), payload.size()));
    w.put_bytes(payload.data(), payload.size());
    return std::move(w.bytes());
}

EcocModel decode_model(const std::vector<std::uint8_t>& bytes) {
    ByteReader h(bytes.data(), bytes.size(), "model");
    char magic[8];
    h.get_bytes(magic, sizeof magic);
    if (std::memcmp(magic, kModelMagic, sizeof magic) != 0) throw FormatError("model: bad magic");
    const auto version = h.get<std::uint16_t>();
    if (version != kModelVersion) throw IncompatibleError("model: unsupported file version " + std::to_string(version));
    const auto payload_size = h.get<std::uint64_t>();
    const auto crc = h.get<std::uint32_t>();
    if (h.remaining() != payload_size) throw FormatError("model: payload length does not match header");
    const std::uint8_t* payload = bytes.data() + (bytes.size() - h.remaining());
    if (crc32_of(payload, payload_size) != crc) throw FormatError("model: checksum mismatch");

    ByteReader r(payload, payload_size, "model");
    EcocModel m;
    m.metadata.resize(r.get_count(1));
    r.get_bytes(m.metadata.data(), m.metadata.size());
    m.class_values = r.get_reals();
    m.standardizer.mean = r.get_reals();
    m.standardizer.stddev = r.get_reals();
    const std::size_t dims = m.standardizer.mean.size();
    if (m.standardizer.stddev.size() != dims) throw FormatError("model: standardizer lengths differ");
    m.coding.classes = r.get_count(0);
    m.coding.learners = r.get_count(0);
    if (m.coding.classes != m.class_values.size()) throw FormatError("model: class count mismatch");
    if (m.coding.learners > r.remaining() || m.coding.classes > r.remaining() ||
        m.coding.classes * m.coding.learners > r.remaining())
        throw FormatError("model: coding matrix exceeds remaining data");
    m.coding.entries.resize(m.coding.classes * m.coding.learners);
    for (std::int8_t& e : m.coding.entries) {
        e = r.get<std::int8_t>();
        if (e < -1 || e > 1) throw FormatError("model: coding entry outside {-1, 0, 1}");
    }
    const auto decoding = r.get<std::uint8_t>();
    if (decoding > static_cast<std::uint8_t>(Decoding::Hamming)) throw FormatError("model: unknown decoding rule");
    m.decoding = static_cast<Decoding>(decoding);
    const std::size_t n_learners = r.get_count(1);
    if (n_learners != m.coding.learners) throw FormatError("model: learner count differs from coding matrix");
    m.learners.resize(n_learners);
    for (BinarySvm& svm : m.learners) {
        const auto kind = r.get<std::uint8_t>();
        if (kind != static_cast<std::uint8_t>(KernelKind::Polynomial)) throw FormatError("model: unknown kernel kind");
        svm.kernel.kind = KernelKind::Polynomial;
        svm.kernel.degree = r.get<std::int32_t>();
        svm.kernel.gamma = r.get<double>();
        svm.kernel.coef0 = r.get<double>();
        svm.box_c = r.get<double>();
        svm.bias = r.get<double>();
        svm.coef = r.get_reals();
        if (dims != 0 && svm.coef.size() > r.remaining() / (dims * sizeof(double)))
            throw FormatError("model: support vectors exceed remaining data");
        svm.support_vectors = FeatureMatrix(svm.coef.size(), dims);
        for (double& v : svm.support_vectors.data()) v = r.get<double>();
    }
    if (r.remaining() != 0) throw FormatError("model: trailing bytes in payload");
    return m;
}

void save_model(const std::filesystem::path& path, const EcocModel& model) {
    write_file_bytes(path, encode_model(model));
}

EcocModel load_model(const std::filesystem::path& path) {
    try {
        return decode_model(read_file_bytes(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_scalogram(std::ostream& out, const Scalogram& scalogram) {
    out << scalogram.n_scales << ' ' << scalogram.n_time << '\n';
    char buf[32];
    for (std::size_t s = 0; s < scalogram.n_scales; ++s) {
        const auto row = scalogram.row(s);
        for (std::size_t t = 0; t < row.size(); ++t) {
            std::snprintf(buf, sizeof buf, "%.9e", row[t]);
            if (t) out << ' ';
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace wvcl
