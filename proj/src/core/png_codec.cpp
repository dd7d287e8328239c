#include "core/png_codec.hpp"

#include "core/error.hpp"

#include <zlib.h>

#include <cstdlib>
#include <cstring>

namespace sigcast {

namespace {

constexpr unsigned char kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

void put_u32_be(std::string& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                 static_cast<char>(v >> 8), static_cast<char>(v)};
    out.append(b, 4);
}

std::uint32_t get_u32_be(const unsigned char* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void append_chunk(std::string& out, const char type[4], const std::string& data) {
    put_u32_be(out, static_cast<std::uint32_t>(data.size()));
    out.append(type, 4);
    out += data;
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(type), 4);
    if (!data.empty())
        crc = crc32(crc, reinterpret_cast<const Bytef*>(data.data()),
                    static_cast<uInt>(data.size()));
    put_u32_be(out, static_cast<std::uint32_t>(crc));
}

int paeth_predict(int a, int b, int c) {
    int p = a + b - c;
    int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
}

}  // namespace

std::string encode_png_rgb8(const RgbImage& img) {
    if (img.height == 0 || img.width == 0)
        throw validation_error("png encode: empty image");
    const std::size_t expected = std::size_t(img.height) * img.width * 3;
    if (img.rgb.size() != expected)
        throw validation_error("png encode: pixel buffer holds " +
                               std::to_string(img.rgb.size()) + " bytes, expected " +
                               std::to_string(expected));

    const std::size_t stride = std::size_t(img.width) * 3;
    std::string raw;
    raw.reserve(img.height * (stride + 1));
    for (std::uint32_t r = 0; r < img.height; ++r) {
        raw += '\0';  // filter type 0
        raw.append(reinterpret_cast<const char*>(img.rgb.data()) + r * stride, stride);
    }

    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::string deflated(bound, '\0');
    if (compress2(reinterpret_cast<Bytef*>(deflated.data()), &bound,
                  reinterpret_cast<const Bytef*>(raw.data()), static_cast<uLong>(raw.size()),
                  Z_BEST_COMPRESSION) != Z_OK)
        throw io_error("png encode: deflate failed");
    deflated.resize(bound);

    std::string out(reinterpret_cast<const char*>(kSignature), 8);
    std::string ihdr;
    put_u32_be(ihdr, img.width);
    put_u32_be(ihdr, img.height);
    ihdr += '\x08';  // bit depth
    ihdr += '\x02';  // color type: truecolor
    ihdr += '\0';    // compression
    ihdr += '\0';    // filter method
    ihdr += '\0';    // interlace
    append_chunk(out, "IHDR", ihdr);
    append_chunk(out, "IDAT", deflated);
    append_chunk(out, "IEND", "");
    return out;
}

RgbImage decode_png_rgb8(const std::string& bytes, const std::string& source_name) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kSignature, 8) != 0)
        throw io_error(source_name + ": not a PNG file");

    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t pos = 8;
    RgbImage img;
    std::string idat;
    bool saw_ihdr = false, saw_iend = false;
    while (!saw_iend) {
        if (pos + 8 > bytes.size())
            throw io_error(source_name + ": truncated chunk header at byte " +
                           std::to_string(pos));
        const std::uint32_t len = get_u32_be(p + pos);
        const char* type = bytes.data() + pos + 4;
        if (pos + 12 + std::size_t(len) > bytes.size())
            throw io_error(source_name + ": truncated chunk payload at byte " +
                           std::to_string(pos));
        uLong crc = crc32(0L, Z_NULL, 0);
        crc = crc32(crc, p + pos + 4, 4 + len);
        if (static_cast<std::uint32_t>(crc) != get_u32_be(p + pos + 8 + len))
            throw io_error(source_name + ": chunk CRC mismatch at byte " + std::to_string(pos));

        if (std::memcmp(type, "IHDR", 4) == 0) {
            if (len != 13) throw io_error(source_name + ": IHDR length " + std::to_string(len));
            img.width = get_u32_be(p + pos + 8);
            img.height = get_u32_be(p + pos + 8 + 4);
            const unsigned char depth = p[pos + 8 + 8];
            const unsigned char color = p[pos + 8 + 9];
            const unsigned char interlace = p[pos + 8 + 12];
            if (depth != 8 || color != 2)
                throw validation_error(source_name + ": unsupported PNG (bit depth " +
                                       std::to_string(depth) + ", color type " +
                                       std::to_string(color) + "); only 8-bit RGB is handled");
            if (interlace != 0)
                throw validation_error(source_name + ": interlaced PNG is not handled");
            if (img.width == 0 || img.height == 0)
                throw io_error(source_name + ": zero-sized image");
            saw_ihdr = true;
        } else if (std::memcmp(type, "IDAT", 4) == 0) {
            if (!saw_ihdr) throw io_error(source_name + ": IDAT before IHDR");
            idat.append(bytes.data() + pos + 8, len);
        } else if (std::memcmp(type, "IEND", 4) == 0) {
            saw_iend = true;
        }
        pos += 12 + std::size_t(len);
    }
    if (!saw_ihdr) throw io_error(source_name + ": missing IHDR");

    const std::size_t stride = std::size_t(img.width) * 3;
    const std::size_t raw_size = std::size_t(img.height) * (stride + 1);
    std::string raw(raw_size, '\0');
    uLongf got = static_cast<uLongf>(raw_size);
    if (uncompress(reinterpret_cast<Bytef*>(raw.data()), &got,
                   reinterpret_cast<const Bytef*>(idat.data()),
                   static_cast<uLong>(idat.size())) != Z_OK ||
        got != raw_size)
        throw io_error(source_name + ": corrupt image data (inflate failed)");

    img.rgb.assign(std::size_t(img.height) * stride, 0);
    const auto* src = reinterpret_cast<const unsigned char*>(raw.data());
    for (std::uint32_t r = 0; r < img.height; ++r) {
        const unsigned char filter = src[r * (stride + 1)];
        const unsigned char* line = src + r * (stride + 1) + 1;
        std::uint8_t* out = img.rgb.data() + std::size_t(r) * stride;
        const std::uint8_t* prev = r > 0 ? out - stride : nullptr;
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= 3 ? out[i - 3] : 0;             // left
            const int b = prev ? prev[i] : 0;                  // up
            const int c = (prev && i >= 3) ? prev[i - 3] : 0;  // upper-left
            int v = line[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth_predict(a, b, c); break;
                default:
                    throw io_error(source_name + ": unknown filter type " +
                                   std::to_string(filter) + " in row " + std::to_string(r));
            }
            out[i] = static_cast<std::uint8_t>(v & 0xff);
        }
    }
    return img;
}

}  // namespace sigcast
