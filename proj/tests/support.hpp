#pragma once

// Shared fixtures for the test binaries. The EDF builder here is written
// directly from the container's published field layout, independently of the
// parser under test, so disagreements surface as test failures.

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <unistd.h>
#include <vector>

#include <zlib.h>

#include "core/types.hpp"

namespace testsup {

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        std::random_device rd;
        char buf[64];
        std::snprintf(buf, sizeof buf, "sigcast-test-%u-%u-%u",
                      static_cast<unsigned>(::getpid()), counter++, rd() & 0xffffffu);
        path_ = std::filesystem::temp_directory_path() / buf;
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string str() const { return path_.string(); }
    std::string sub(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline sigcast::SignalMatrix make_matrix(std::string id, std::size_t channels,
                                         std::size_t length, int label = 0) {
    sigcast::SignalMatrix m;
    m.id = std::move(id);
    m.channels = channels;
    m.length = length;
    m.label = label;
    m.samples.assign(channels * length, 0.0);
    return m;
}

// Deterministic filler: distinct, sign-varied values per cell.
inline void fill_pattern(sigcast::SignalMatrix& m) {
    for (std::size_t c = 0; c < m.channels; ++c)
        for (std::size_t t = 0; t < m.length; ++t)
            m.at(c, t) = 0.25 * static_cast<double>(c + 1) *
                             static_cast<double>(t + 1) -
                         3.0 * static_cast<double>(c) + 0.125 * static_cast<double>(t % 7);
}

// ---- EDF construction -------------------------------------------------

struct EdfTestSignal {
    std::string label = "EEG test";
    std::string transducer = "AgAgCl electrode";
    std::string dimension = "uV";
    long long physical_min = -500;
    long long physical_max = 500;
    int digital_min = -2048;
    int digital_max = 2047;
    std::size_t samples_per_record = 10;
    std::vector<std::int16_t> digital;  // num_records * samples_per_record
};

inline void put_field(std::string& out, const std::string& value, std::size_t width) {
    std::string v = value.substr(0, width);
    v.resize(width, ' ');
    out += v;
}

inline std::string fmt_ll(long long v) { return std::to_string(v); }

// Assembles a complete EDF byte stream: 256-byte fixed header, 256 bytes of
// header per signal (field-major), then interleaved 16-bit LE data records.
inline std::string build_edf(const std::vector<EdfTestSignal>& signals,
                             long long declared_records, double record_duration = 1.0,
                             const std::string& version = "0") {
    std::string out;
    const std::size_t ns = signals.size();
    std::size_t actual_records = 0;
    if (!signals.empty() && signals[0].samples_per_record > 0)
        actual_records = signals[0].digital.size() / signals[0].samples_per_record;

    put_field(out, version, 8);
    put_field(out, "X F X X", 80);
    put_field(out, "Startdate X X X X", 80);
    put_field(out, "01.01.89", 8);
    put_field(out, "00.00.00", 8);
    put_field(out, fmt_ll(static_cast<long long>(256 * (ns + 1))), 8);
    put_field(out, "", 44);
    put_field(out, fmt_ll(declared_records), 8);
    char dur[32];
    std::snprintf(dur, sizeof dur, "%g", record_duration);
    put_field(out, dur, 8);
    put_field(out, fmt_ll(static_cast<long long>(ns)), 4);

    for (const auto& s : signals) put_field(out, s.label, 16);
    for (const auto& s : signals) put_field(out, s.transducer, 80);
    for (const auto& s : signals) put_field(out, s.dimension, 8);
    for (const auto& s : signals) put_field(out, fmt_ll(s.physical_min), 8);
    for (const auto& s : signals) put_field(out, fmt_ll(s.physical_max), 8);
    for (const auto& s : signals) put_field(out, fmt_ll(s.digital_min), 8);
    for (const auto& s : signals) put_field(out, fmt_ll(s.digital_max), 8);
    for (const auto& s : signals) put_field(out, "", 80);
    for (const auto& s : signals)
        put_field(out, fmt_ll(static_cast<long long>(s.samples_per_record)), 8);
    for (std::size_t i = 0; i < ns; ++i) put_field(out, "", 32);

    for (std::size_t r = 0; r < actual_records; ++r) {
        for (const auto& s : signals) {
            for (std::size_t i = 0; i < s.samples_per_record; ++i) {
                const std::int16_t d = s.digital[r * s.samples_per_record + i];
                const auto u = static_cast<std::uint16_t>(d);
                out.push_back(static_cast<char>(u & 0xff));
                out.push_back(static_cast<char>((u >> 8) & 0xff));
            }
        }
    }
    return out;
}

// ---- PNG construction --------------------------------------------------

// Minimal independent PNG writer used to feed the decoder under test:
// takes pre-filtered raw scanlines (filter byte + 3*width bytes per row),
// deflates them with zlib, and frames the three standard chunks.
inline void png_be32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>((v >> 24) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>(v & 0xff));
}

inline void png_chunk(std::string& out, const char type[4], const std::string& data) {
    png_be32(out, static_cast<std::uint32_t>(data.size()));
    std::string body(type, 4);
    body += data;
    out += body;
    const auto crc = static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const unsigned char*>(body.data()),
                static_cast<unsigned>(body.size())));
    png_be32(out, crc);
}

inline std::string assemble_png(std::uint32_t height, std::uint32_t width,
                                const std::vector<std::uint8_t>& raw_scanlines) {
    std::string out("\x89PNG\r\n\x1a\n", 8);
    std::string ihdr;
    png_be32(ihdr, width);
    png_be32(ihdr, height);
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type: truecolor
    ihdr.push_back(0);   // compression
    ihdr.push_back(0);   // filter method
    ihdr.push_back(0);   // not interlaced
    png_chunk(out, "IHDR", ihdr);

    uLongf bound = ::compressBound(static_cast<uLong>(raw_scanlines.size()));
    std::string compressed(bound, '\0');
    const int rc = ::compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound,
                               raw_scanlines.data(),
                               static_cast<uLong>(raw_scanlines.size()), 6);
    if (rc != Z_OK) throw std::runtime_error("zlib compress failed in test helper");
    compressed.resize(bound);
    png_chunk(out, "IDAT", compressed);
    png_chunk(out, "IEND", "");
    return out;
}

}  // namespace testsup
