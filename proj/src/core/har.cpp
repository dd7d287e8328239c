#include "core/har.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>

#include "core/fixed_width.hpp"
#include "core/hash.hpp"
#include "core/io_util.hpp"

namespace fs = std::filesystem;

namespace sigcast {

namespace {

const std::array<const char*, 9> kChannelStems = {
    "total_acc_x", "total_acc_y", "total_acc_z",
    "body_acc_x",  "body_acc_y",  "body_acc_z",
    "body_gyro_x", "body_gyro_y", "body_gyro_z",
};

std::vector<int> parse_int_column(const std::string& text, const std::string& source,
                                  int lo, int hi) {
    std::vector<int> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string tok = text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                    : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        while (!tok.empty() && (tok.back() == '\r' || tok.back() == ' ')) tok.pop_back();
        std::size_t start = 0;
        while (start < tok.size() && tok[start] == ' ') ++start;
        tok = tok.substr(start);
        if (tok.empty()) continue;
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw validation_error(source + " row " + std::to_string(line_no) +
                                   ": malformed integer '" + tok + "'");
        if (v < lo || v > hi)
            throw validation_error(source + " row " + std::to_string(line_no) + ": value " +
                                   std::to_string(v) + " outside [" + std::to_string(lo) +
                                   "," + std::to_string(hi) + "]");
        out.push_back(v);
    }
    return out;
}

} // namespace

Dataset load_har_dataset(const HarFiles& files, const std::string& name) {
    Sha256 checksum;
    std::array<NumericTable, 9> tables;
    for (std::size_t c = 0; c < 9; ++c) {
        const std::string bytes = read_file(files.channels[c]);
        checksum.update(bytes);
        tables[c] = parse_fixed_width(bytes, files.channels[c]);
    }

    const std::size_t rows = tables[0].rows;
    const std::size_t cols = tables[0].cols;
    if (rows == 0)
        throw validation_error(files.channels[0] + ": no instances");
    for (std::size_t c = 1; c < 9; ++c) {
        if (tables[c].rows != rows)
            throw validation_error(files.channels[c] + ": row count " +
                                   std::to_string(tables[c].rows) + " does not match " +
                                   files.channels[0] + " (" + std::to_string(rows) + ")");
        if (tables[c].cols != cols)
            throw validation_error(files.channels[c] + ": column count " +
                                   std::to_string(tables[c].cols) + " does not match " +
                                   files.channels[0] + " (" + std::to_string(cols) + ")");
    }

    const std::string label_bytes = read_file(files.labels);
    checksum.update(label_bytes);
    const std::vector<int> labels = parse_int_column(label_bytes, files.labels, 1, 6);
    if (labels.size() != rows)
        throw validation_error(files.labels + ": " + std::to_string(labels.size()) +
                               " labels for " + std::to_string(rows) + " instances");

    std::vector<int> subjects;
    if (!files.subjects.empty()) {
        const std::string subj_bytes = read_file(files.subjects);
        checksum.update(subj_bytes);
        subjects = parse_int_column(subj_bytes, files.subjects, 0, 1 << 20);
        if (subjects.size() != rows)
            throw validation_error(files.subjects + ": " + std::to_string(subjects.size()) +
                                   " subjects for " + std::to_string(rows) + " instances");
    }

    Dataset ds;
    ds.name = name;
    ds.class_names = {"walking",  "walking_upstairs", "walking_downstairs",
                      "sitting",  "standing",         "laying"};
    ds.instances.reserve(rows);
    char idbuf[64];
    for (std::size_t i = 0; i < rows; ++i) {
        SignalMatrix m;
        std::snprintf(idbuf, sizeof idbuf, "%s-%06zu", name.c_str(), i);
        m.id = idbuf;
        m.channels = 9;
        m.length = cols;
        m.samples.resize(9 * cols);
        for (std::size_t c = 0; c < 9; ++c)
            for (std::size_t t = 0; t < cols; ++t)
                m.samples[c * cols + t] = tables[c].values[i * cols + t];
        m.label = labels[i] - 1; // 1..6 -> 0-based
        if (!subjects.empty()) m.group = "subj-" + std::to_string(subjects[i]);
        ds.instances.push_back(std::move(m));
    }
    ds.checksum = checksum.hex();
    return ds;
}

HarFiles find_har_files(const std::string& dir, const std::string& partition) {
    const fs::path root(dir);
    const fs::path inertial = root / "Inertial Signals";
    const fs::path base = fs::is_directory(inertial) ? inertial : root;

    HarFiles files;
    for (std::size_t c = 0; c < 9; ++c) {
        const std::string fname = std::string(kChannelStems[c]) + "_" + partition + ".txt";
        const fs::path p = base / fname;
        if (!fs::is_regular_file(p))
            throw io_error("missing channel file: " + p.string());
        files.channels[c] = p.string();
    }
    for (const fs::path cand : {root / ("y_" + partition + ".txt"),
                                base / ("y_" + partition + ".txt")}) {
        if (fs::is_regular_file(cand)) {
            files.labels = cand.string();
            break;
        }
    }
    if (files.labels.empty())
        throw io_error("missing label file y_" + partition + ".txt under " + dir);
    for (const fs::path cand : {root / ("subject_" + partition + ".txt"),
                                base / ("subject_" + partition + ".txt")}) {
        if (fs::is_regular_file(cand)) {
            files.subjects = cand.string();
            break;
        }
    }
    return files;
}

} // namespace sigcast
