#include "core/edf.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "core/hash.hpp"
#include "core/io_util.hpp"

namespace sigcast {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\r' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\r' || s[e - 1] == '\t' ||
                     s[e - 1] == '\0'))
        --e;
    return std::string(s.substr(b, e - b));
}

// Fixed-width ASCII field reader over the two header blocks.
class FieldReader {
public:
    FieldReader(std::string_view bytes, const std::string& source)
        : bytes_(bytes), source_(source) {}

    std::string take(std::size_t width, const char* what) {
        if (pos_ + width > bytes_.size())
            throw io_error(source_ + ": truncated header while reading " +
                           std::string(what) + " (expected " +
                           std::to_string(pos_ + width) + " bytes, got " +
                           std::to_string(bytes_.size()) + ")");
        std::string out = trim(bytes_.substr(pos_, width));
        pos_ += width;
        return out;
    }

    long long take_int(std::size_t width, const char* what) {
        const std::string tok = take(width, what);
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw validation_error(source_ + ": field '" + what +
                                   "' is not an integer: '" + tok + "'");
        return v;
    }

    double take_real(std::size_t width, const char* what) {
        const std::string tok = take(width, what);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() ||
            !std::isfinite(v))
            throw validation_error(source_ + ": field '" + what +
                                   "' is not a finite number: '" + tok + "'");
        return v;
    }

private:
    std::string_view bytes_;
    std::string source_;
    std::size_t pos_ = 0;
};

} // namespace

EdfRecording parse_edf(std::string_view bytes, const std::string& source_name) {
    if (bytes.size() < 256)
        throw io_error(source_name + ": truncated header (expected 256 bytes, got " +
                       std::to_string(bytes.size()) + ")");

    FieldReader r(bytes, source_name);
    EdfRecording rec;
    rec.version = r.take(8, "version");
    if (rec.version != "0")
        throw validation_error(source_name + ": bad version field '" + rec.version +
                               "' (EDF headers start with '0')");
    rec.patient = r.take(80, "patient");
    rec.recording = r.take(80, "recording");
    rec.start_date = r.take(8, "start date");
    rec.start_time = r.take(8, "start time");
    const long long header_bytes = r.take_int(8, "header bytes");
    r.take(44, "reserved");
    rec.declared_records = r.take_int(8, "record count");
    rec.record_duration = r.take_real(8, "record duration");
    const long long num_signals = r.take_int(4, "signal count");

    if (num_signals <= 0)
        throw validation_error(source_name + ": signal count must be positive, got " +
                               std::to_string(num_signals));
    if (rec.record_duration <= 0.0)
        throw validation_error(source_name + ": record duration must be positive, got " +
                               std::to_string(rec.record_duration));
    const std::size_t ns = static_cast<std::size_t>(num_signals);
    const std::size_t expected_header = 256 + ns * 256;
    if (header_bytes != static_cast<long long>(expected_header))
        throw validation_error(source_name + ": header size field says " +
                               std::to_string(header_bytes) + ", layout requires " +
                               std::to_string(expected_header));
    if (bytes.size() < expected_header)
        throw io_error(source_name + ": truncated signal headers (expected " +
                       std::to_string(expected_header) + " bytes, got " +
                       std::to_string(bytes.size()) + ")");

    // Signal headers are stored field-major: all labels, then all transducers...
    rec.signals.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) rec.signals[s].label = r.take(16, "label");
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].transducer = r.take(80, "transducer");
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].physical_dimension = r.take(8, "physical dimension");
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].physical_min = r.take_real(8, "physical minimum");
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].physical_max = r.take_real(8, "physical maximum");
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].digital_min = static_cast<int>(r.take_int(8, "digital minimum"));
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].digital_max = static_cast<int>(r.take_int(8, "digital maximum"));
    for (std::size_t s = 0; s < ns; ++s)
        rec.signals[s].prefiltering = r.take(80, "prefiltering");
    for (std::size_t s = 0; s < ns; ++s) {
        const long long n = r.take_int(8, "samples per record");
        if (n <= 0)
            throw validation_error(source_name + ": signal " + std::to_string(s) +
                                   ": samples per record must be positive, got " +
                                   std::to_string(n));
        rec.signals[s].samples_per_record = static_cast<std::size_t>(n);
        rec.signals[s].sampling_rate = static_cast<double>(n) / rec.record_duration;
    }
    for (std::size_t s = 0; s < ns; ++s) r.take(32, "reserved");

    for (std::size_t s = 0; s < ns; ++s) {
        if (rec.signals[s].digital_min == rec.signals[s].digital_max)
            throw numeric_error(source_name + ": signal '" + rec.signals[s].label +
                                "': degenerate calibration (digital minimum equals "
                                "digital maximum, " +
                                std::to_string(rec.signals[s].digital_min) + ")");
    }

    std::size_t record_bytes = 0;
    for (const EdfSignal& s : rec.signals) record_bytes += 2 * s.samples_per_record;

    rec.header_bytes = expected_header;
    const std::size_t payload = bytes.size() - expected_header;
    if (rec.declared_records >= 0) {
        const std::size_t expected_payload =
            static_cast<std::size_t>(rec.declared_records) * record_bytes;
        if (payload != expected_payload)
            throw io_error(source_name + ": payload is " + std::to_string(payload) +
                           " bytes, header declares " + std::to_string(expected_payload) +
                           " (" + std::to_string(rec.declared_records) + " records of " +
                           std::to_string(record_bytes) + " bytes)");
        rec.num_records = static_cast<std::size_t>(rec.declared_records);
    } else {
        // The "-1 records" convention: derive the count from the file size.
        if (payload % record_bytes != 0)
            throw io_error(source_name + ": payload is " + std::to_string(payload) +
                           " bytes, not a multiple of the " +
                           std::to_string(record_bytes) + "-byte record size");
        rec.num_records = payload / record_bytes;
    }

    for (EdfSignal& s : rec.signals)
        s.samples.reserve(rec.num_records * s.samples_per_record);

    const unsigned char* p =
        reinterpret_cast<const unsigned char*>(bytes.data()) + expected_header;
    for (std::size_t rec_i = 0; rec_i < rec.num_records; ++rec_i) {
        for (EdfSignal& s : rec.signals) {
            const double gain = (s.physical_max - s.physical_min) /
                                (static_cast<double>(s.digital_max) -
                                 static_cast<double>(s.digital_min));
            for (std::size_t i = 0; i < s.samples_per_record; ++i) {
                const std::int16_t dig = static_cast<std::int16_t>(
                    static_cast<std::uint16_t>(p[0]) |
                    (static_cast<std::uint16_t>(p[1]) << 8));
                p += 2;
                s.samples.push_back(s.physical_min +
                                    (static_cast<double>(dig) -
                                     static_cast<double>(s.digital_min)) *
                                        gain);
            }
        }
    }
    return rec;
}

EdfRecording parse_edf_file(const std::string& path) {
    return parse_edf(read_file(path), path);
}

StageMap default_stage_map() {
    StageMap m;
    m.class_names = {"W", "N1", "N2", "N3", "REM"};
    const std::pair<const char*, int> entries[] = {
        {"W", 0},   {"1", 1},   {"2", 2},  {"3", 3},  {"4", 3},  {"R", 4},
        {"?", -1},  {"M", -1},
        {"Sleep stage W", 0}, {"Sleep stage 1", 1}, {"Sleep stage 2", 2},
        {"Sleep stage 3", 3}, {"Sleep stage 4", 3}, {"Sleep stage R", 4},
        {"Sleep stage ?", -1}, {"Movement time", -1},
    };
    for (const auto& [tok, idx] : entries) m.tokens.emplace(tok, idx);
    return m;
}

StageMap parse_stage_map(std::string_view text) {
    StageMap m;
    int max_class = -1;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string line =
            trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.rfind('=');
        if (eq == std::string::npos || eq == 0)
            throw validation_error("stage map line " + std::to_string(line_no) +
                                   ": expected token=index, got '" + line + "'");
        const std::string token = trim(line.substr(0, eq));
        const std::string idx_tok = trim(line.substr(eq + 1));
        int idx = 0;
        const auto [ptr, ec] =
            std::from_chars(idx_tok.data(), idx_tok.data() + idx_tok.size(), idx);
        if (ec != std::errc() || ptr != idx_tok.data() + idx_tok.size())
            throw validation_error("stage map line " + std::to_string(line_no) +
                                   ": malformed class index '" + idx_tok + "'");
        m.tokens[token] = idx;
        if (idx > max_class) max_class = idx;
    }
    if (max_class < 0) throw validation_error("stage map defines no classes");
    for (int c = 0; c <= max_class; ++c) m.class_names.push_back("class" + std::to_string(c));
    return m;
}

std::vector<int> parse_stage_labels(std::string_view text, const StageMap& map,
                                    const std::string& source_name) {
    std::vector<int> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string tok =
            trim(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                : eol - pos));
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (tok.empty()) continue;
        const auto it = map.tokens.find(tok);
        if (it != map.tokens.end()) {
            out.push_back(it->second);
            continue;
        }
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw validation_error(source_name + " line " + std::to_string(line_no) +
                                   ": unknown stage token '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<SignalMatrix> epoch_recording(const std::vector<double>& stream,
                                          std::size_t epoch_samples,
                                          const std::vector<int>& labels,
                                          const std::string& id_prefix) {
    if (epoch_samples == 0)
        throw validation_error("epoch_recording: epoch length must be positive");
    const std::size_t n_epochs = stream.size() / epoch_samples;
    std::vector<SignalMatrix> out;
    if (n_epochs == 0) return out; // shorter than one epoch: empty, caller warns
    if (labels.size() < n_epochs)
        throw validation_error("epoch_recording: " + std::to_string(labels.size()) +
                               " labels for " + std::to_string(n_epochs) + " epochs");
    out.reserve(n_epochs);
    char idbuf[96];
    for (std::size_t e = 0; e < n_epochs; ++e) {
        if (labels[e] < 0) continue; // unscored epoch, dropped
        SignalMatrix m;
        std::snprintf(idbuf, sizeof idbuf, "%s-e%05zu", id_prefix.c_str(), e);
        m.id = idbuf;
        m.channels = 1;
        m.length = epoch_samples;
        m.samples.assign(stream.begin() + e * epoch_samples,
                         stream.begin() + (e + 1) * epoch_samples);
        m.label = labels[e];
        m.group = id_prefix;
        out.push_back(std::move(m));
    }
    return out;
}

Dataset load_sleep_edf(const std::string& edf_path, const std::string& channel_label,
                       const std::string& labels_path, const StageMap& map,
                       std::size_t epoch_samples, const std::string& name) {
    const std::string edf_bytes = read_file(edf_path);
    const std::string label_bytes = read_file(labels_path);
    const EdfRecording rec = parse_edf(edf_bytes, edf_path);

    const EdfSignal* chosen = nullptr;
    for (const EdfSignal& s : rec.signals)
        if (s.label == channel_label) {
            chosen = &s;
            break;
        }
    if (chosen == nullptr) {
        std::string have;
        for (const EdfSignal& s : rec.signals) {
            if (!have.empty()) have += ", ";
            have += "'" + s.label + "'";
        }
        throw validation_error(edf_path + ": no channel labeled '" + channel_label +
                               "' (available: " + have + ")");
    }

    const std::vector<int> labels = parse_stage_labels(label_bytes, map, labels_path);
    Dataset ds;
    ds.name = name;
    ds.class_names = map.class_names;
    ds.instances = epoch_recording(chosen->samples, epoch_samples, labels, name);
    for (const SignalMatrix& m : ds.instances)
        if (m.label >= static_cast<int>(ds.class_names.size()))
            throw validation_error(labels_path + ": label " + std::to_string(m.label) +
                                   " outside the " +
                                   std::to_string(ds.class_names.size()) +
                                   "-class stage map");
    Sha256 checksum;
    checksum.update(edf_bytes);
    checksum.update(label_bytes);
    ds.checksum = checksum.hex();
    return ds;
}

} // namespace sigcast
