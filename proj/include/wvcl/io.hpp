#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "wvcl/cwt.hpp"
#include "wvcl/ecoc.hpp"
#include "wvcl/types.hpp"

namespace wvcl {

// IQ capture file, all fields little-endian:
//   offset  0  magic "WVCLIQ1\0"        8 bytes
//   offset  8  version                 u16 (1)
//   offset 10  sample_rate_hz          f64
//   offset 18  sample_count            u64
//   offset 26  payload                 sample_count x (f32 I, f32 Q)
inline constexpr char kCaptureMagic[8] = {'W', 'V', 'C', 'L', 'I', 'Q', '1', '\0'};
inline constexpr std::uint16_t kCaptureVersion = 1;
inline constexpr std::size_t kCaptureHeaderSize = 26;

struct IqCapture {
    double sample_rate_hz = 0.0;
    std::vector<float> interleaved;  // I0, Q0, I1, Q1, ...

    std::size_t sample_count() const noexcept { return interleaved.size() / 2; }
    static IqCapture from_frame(const ComplexFrame& frame);
    ComplexFrame to_frame() const;
    // Samples [offset, offset + count) as a frame.
    ComplexFrame window(std::size_t offset, std::size_t count) const;
};

std::vector<std::uint8_t> encode_capture(const IqCapture& capture);
IqCapture decode_capture(const std::vector<std::uint8_t>& bytes);
void write_capture(const std::filesystem::path& path, const IqCapture& capture);
IqCapture read_capture(const std::filesystem::path& path);

// Model file:
//   magic "WVCLMDL\0" | u16 version | u64 payload length | u32 CRC-32 of payload | payload
// The payload holds the metadata text, class values, standardizer, coding
// matrix, decoding rule and every learner (kernel, C, bias, coefficients,
// support vectors). Reals are f64, counts u64, all little-endian.
inline constexpr char kModelMagic[8] = {'W', 'V', 'C', 'L', 'M', 'D', 'L', '\0'};
inline constexpr std::uint16_t kModelVersion = 1;

std::vector<std::uint8_t> encode_model(const EcocModel& model);
EcocModel decode_model(const std::vector<std::uint8_t>& bytes);
void save_model(const std::filesystem::path& path, const EcocModel& model);
EcocModel load_model(const std::filesystem::path& path);

// Plain-text dump: header line "<scales> <time>", then one line per scale with
// space-separated magnitudes in %.9e.
void write_scalogram(std::ostream& out, const Scalogram& scalogram);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace wvcl
