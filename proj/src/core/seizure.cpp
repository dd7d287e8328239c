#include "core/seizure.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "core/hash.hpp"
#include "core/io_util.hpp"

namespace sigcast {

namespace {

constexpr std::size_t kSamplesPerRow = 178;

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s.remove_prefix(1);
        s.remove_suffix(1);
    }
    return s;
}

bool parse_double(std::string_view tok, double& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_int(std::string_view tok, int& out) {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(strip(line.substr(start)));
            return;
        }
        out.push_back(strip(line.substr(start, comma - start)));
        start = comma + 1;
    }
}

} // namespace

Dataset load_seizure_csv(std::string_view text, bool binary_labels,
                         const std::string& name) {
    Dataset ds;
    ds.name = name;
    if (binary_labels)
        ds.class_names = {"non_seizure", "seizure"};
    else
        ds.class_names = {"seizure", "tumor_area", "healthy_area", "eyes_closed",
                          "eyes_open"};
    ds.checksum = sha256_hex(text);

    std::vector<std::string_view> fields;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    char idbuf[64];
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (strip(line).empty()) continue;

        split_fields(line, fields);

        // The export format carries a header row; recognize it by a
        // non-integer label field on the first line.
        if (line_no == 1) {
            int probe = 0;
            if (!parse_int(fields.back(), probe)) continue;
        }

        if (fields.size() != kSamplesPerRow + 1 && fields.size() != kSamplesPerRow + 2)
            throw validation_error(name + " row " + std::to_string(line_no) +
                                   ": expected " + std::to_string(kSamplesPerRow) +
                                   " samples plus label (and optional id), got " +
                                   std::to_string(fields.size()) + " fields");

        const bool has_id = fields.size() == kSamplesPerRow + 2;
        SignalMatrix m;
        std::snprintf(idbuf, sizeof idbuf, "%s-%06zu", name.c_str(),
                      ds.instances.size());
        m.id = idbuf;
        if (has_id) {
            // Source ids look like "X21.V1.791"; the part after the first dot
            // identifies the recording and serves as the instance group.
            const std::string_view src_id = fields[0];
            const std::size_t dot = src_id.find('.');
            if (dot != std::string_view::npos)
                m.group = std::string(src_id.substr(dot + 1));
        }
        m.channels = 1;
        m.length = kSamplesPerRow;
        m.samples.resize(kSamplesPerRow);
        const std::size_t first_sample = has_id ? 1 : 0;
        for (std::size_t i = 0; i < kSamplesPerRow; ++i) {
            double v = 0.0;
            if (!parse_double(fields[first_sample + i], v) || !std::isfinite(v))
                throw validation_error(name + " row " + std::to_string(line_no) +
                                       ": malformed sample '" +
                                       std::string(fields[first_sample + i]) + "'");
            m.samples[i] = v;
        }
        int label = 0;
        if (!parse_int(fields.back(), label) || label < 1 || label > 5)
            throw validation_error(name + " row " + std::to_string(line_no) +
                                   ": label must be an integer in 1..5, got '" +
                                   std::string(fields.back()) + "'");
        m.label = binary_labels ? (label == 1 ? 1 : 0) : label - 1;
        ds.instances.push_back(std::move(m));
    }
    if (ds.instances.empty()) throw validation_error(name + ": no data rows");
    return ds;
}

Dataset load_seizure_csv_file(const std::string& path, bool binary_labels) {
    return load_seizure_csv(read_file(path), binary_labels);
}

} // namespace sigcast
