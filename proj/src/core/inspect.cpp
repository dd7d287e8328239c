#include "core/inspect.hpp"

#include "core/bytes.hpp"
#include "core/error.hpp"
#include "core/io_util.hpp"
#include "core/png_codec.hpp"
#include "core/text_adapter.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <filesystem>
#include <sstream>

namespace sigcast {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool has_prefix(const std::string& bytes, const char* magic, std::size_t len) {
    return bytes.size() >= len && std::memcmp(bytes.data(), magic, len) == 0;
}

// Parses every line, so corruption is reported with its line number even when
// only a summary is printed.
std::string inspect_jsonl(const std::string& path, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    json header;
    std::size_t records = 0;
    std::array<std::size_t, 3> split_counts{0, 0, 0};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::exception& e) {
            throw validation_error(path + " line " + std::to_string(lineno) +
                                   ": malformed record: " + e.what());
        }
        if (lineno == 1) {
            header = std::move(rec);
            continue;
        }
        ++records;
        if (header.value("kind", "") == "split") {
            const std::string name = rec.value("section", "");
            if (name == "train") split_counts[0]++;
            else if (name == "valid") split_counts[1]++;
            else if (name == "test") split_counts[2]++;
            else
                throw validation_error(path + " line " + std::to_string(lineno) +
                                       ": unknown section '" + name + "'");
        } else if (!rec.contains("id")) {
            throw validation_error(path + " line " + std::to_string(lineno) +
                                   ": record lacks an 'id' field");
        }
    }
    if (header.is_null()) throw validation_error(path + ": empty manifest");

    std::ostringstream out;
    const std::string kind = header.value("kind", "(unknown)");
    out << path << ": " << kind << " manifest, " << records << " records\n";
    out << "  header: " << header.dump() << "\n";
    if (kind == "split")
        out << "  sections: train=" << split_counts[0] << " valid=" << split_counts[1]
            << " test=" << split_counts[2] << "\n";
    return out.str();
}

std::string inspect_png(const std::string& path, const std::string& bytes) {
    RgbImage img = decode_png_rgb8(bytes, path);
    unsigned lo = 255, hi = 0;
    double sum = 0.0;
    for (std::uint8_t v : img.rgb) {
        lo = std::min<unsigned>(lo, v);
        hi = std::max<unsigned>(hi, v);
        sum += v;
    }
    std::ostringstream out;
    out << path << ": PNG, 3x" << img.height << "x" << img.width << " (8-bit RGB)\n";
    out << "  pixel min=" << lo << " max=" << hi << " mean="
        << sum / static_cast<double>(img.rgb.size()) << "\n";

    const fs::path sidecar = fs::path(path).parent_path() / "images.jsonl";
    if (fs::exists(sidecar)) {
        const std::string base = fs::path(path).filename().string();
        std::istringstream in(read_file(sidecar.string()));
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json rec = json::parse(line, nullptr, false);
            if (rec.is_discarded() || rec.value("file", "") != base) continue;
            out << "  id=" << rec.value("id", "?") << " label=" << rec.value("label", -1)
                << " scheme=" << rec.value("scheme", "?") << "\n";
            out << "  pre-resize shape: " << rec.value("pre_rows", 0) << "x"
                << rec.value("pre_cols", 0) << "\n";
            out << "  norm record: v_min=" << rec.value("v_min", 0.0)
                << " v_max=" << rec.value("v_max", 0.0) << "\n";
            out << "  config_hash=" << rec.value("config_hash", "?") << "\n";
            break;
        }
    }
    return out.str();
}

std::string inspect_text(const std::string& path, const std::string& text) {
    std::istringstream in(text);
    std::string first;
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (lines == 0) first = line;
        ++lines;
    }
    if (lines == 0) throw validation_error(path + ": empty text artifact");

    std::string separator = " ";
    const fs::path sidecar = fs::path(path).parent_path() / "texts.jsonl";
    if (fs::exists(sidecar)) {
        std::istringstream sin(read_file(sidecar.string()));
        std::string header_line;
        if (std::getline(sin, header_line)) {
            json header = json::parse(header_line, nullptr, false);
            if (!header.is_discarded()) separator = header.value("separator", " ");
        }
    }
    std::vector<std::int64_t> tokens = parse_token_text(first, separator);
    std::ostringstream out;
    out << path << ": text artifact, " << lines << " lines\n";
    out << "  line 1: " << tokens.size() << " tokens; first";
    const std::size_t show = std::min<std::size_t>(tokens.size(), 10);
    out << " " << show << ":";
    for (std::size_t i = 0; i < show; ++i) out << " " << tokens[i];
    out << "\n";
    return out.str();
}

std::string inspect_store(const std::string& path, const std::string& bytes) {
    if (bytes.size() < 32) throw io_error(path + ": truncated dataset store");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::ostringstream out;
    out << path << ": dataset store v" << get_u32_le(p + 4) << ", instance count "
        << get_u64_le(p + 8) << ", shape " << get_u64_le(p + 16) << "x" << get_u64_le(p + 24)
        << "\n";
    return out.str();
}

std::string inspect_head(const std::string& path, const std::string& bytes) {
    if (bytes.size() < 24) throw io_error(path + ": truncated probe head");
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::ostringstream out;
    out << path << ": probe head v" << get_u32_le(p + 4) << ", " << get_u64_le(p + 8)
        << " classes x " << get_u64_le(p + 16) << " features\n";
    return out.str();
}

std::string inspect_file(const std::string& path) {
    const std::string bytes = read_file(path);
    const char png_magic[] = "\x89PNG\r\n\x1a\n";
    if (has_prefix(bytes, png_magic, 8)) return inspect_png(path, bytes);
    if (has_prefix(bytes, "SGCD", 4)) return inspect_store(path, bytes);
    if (has_prefix(bytes, "SGPH", 4)) return inspect_head(path, bytes);

    const std::string ext = fs::path(path).extension().string();
    if (ext == ".jsonl") return inspect_jsonl(path, bytes);
    if (ext == ".json") {
        json rec;
        try {
            rec = json::parse(bytes);
        } catch (const json::exception& e) {
            throw validation_error(path + ": malformed JSON: " + e.what());
        }
        return path + ": report\n" + rec.dump(2) + "\n";
    }
    if (ext == ".txt") return inspect_text(path, bytes);
    if (!bytes.empty() && bytes.front() == '{') return inspect_jsonl(path, bytes);
    throw validation_error(path + ": unrecognized artifact");
}

}  // namespace

std::string inspect_path(const std::string& path) {
    if (!fs::exists(path)) throw io_error(path + ": no such file or directory");
    if (!fs::is_directory(path)) return inspect_file(path);

    std::string out;
    for (const char* name : {"manifest.jsonl", "split.jsonl", "images.jsonl", "texts.jsonl",
                             "report.json", "data.bin", "head.bin"}) {
        const fs::path candidate = fs::path(path) / name;
        if (fs::exists(candidate)) out += inspect_file(candidate.string());
    }
    if (out.empty())
        throw validation_error(path + ": directory holds no recognizable artifacts");
    return out;
}

}  // namespace sigcast
