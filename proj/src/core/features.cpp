#include "core/features.hpp"

#include "core/error.hpp"
#include "core/io_util.hpp"
#include "core/png_codec.hpp"
#include "core/text_adapter.hpp"

#include "json.hpp"

#include <filesystem>
#include <map>
#include <sstream>
#include <unordered_map>

namespace sigcast {

using nlohmann::json;

namespace {

struct SidecarLine {
    std::string id;
    int label = 0;
    json rec;
};

struct Sidecar {
    json header;
    std::vector<SidecarLine> lines;
};

Sidecar read_sidecar(const std::string& path, const std::string& expected_kind) {
    Sidecar out;
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
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
        try {
            if (!saw_header) {
                if (rec.value("kind", "") != expected_kind)
                    throw validation_error(path + ": first line is not a '" + expected_kind +
                                           "' header");
                out.header = std::move(rec);
                saw_header = true;
                continue;
            }
            SidecarLine entry;
            entry.id = rec.at("id").get<std::string>();
            entry.label = rec.at("label").get<int>();
            entry.rec = std::move(rec);
            out.lines.push_back(std::move(entry));
        } catch (const json::exception& e) {
            throw validation_error(path + " line " + std::to_string(lineno) +
                                   ": missing or mistyped field: " + e.what());
        }
    }
    if (!saw_header) throw validation_error(path + ": empty sidecar manifest");
    return out;
}

// nullptr filter keeps everything; otherwise keep ids assigned to `section`.
std::vector<const SidecarLine*> select_lines(const Sidecar& sidecar, const std::string& path,
                                             const SplitManifest* split,
                                             std::optional<Section> section) {
    std::vector<const SidecarLine*> out;
    if (section.has_value()) {
        if (split == nullptr)
            throw validation_error("a split manifest is required to select a section");
        std::unordered_map<std::string, Section> by_id;
        by_id.reserve(split->ids.size());
        for (std::size_t i = 0; i < split->ids.size(); ++i)
            by_id.emplace(split->ids[i], split->assignment[i]);
        for (const auto& entry : sidecar.lines) {
            auto it = by_id.find(entry.id);
            if (it == by_id.end())
                throw validation_error(path + ": instance '" + entry.id +
                                       "' is missing from the split manifest");
            if (it->second == *section) out.push_back(&entry);
        }
    } else {
        for (const auto& entry : sidecar.lines) out.push_back(&entry);
    }
    return out;
}

void finish(LoadedFeatures& out, const Sidecar& sidecar, const std::string& path) {
    out.class_names = sidecar.header.at("class_names").get<std::vector<std::string>>();
    out.classes = out.class_names.size();
    for (int label : out.batch.labels)
        if (label < 0 || static_cast<std::size_t>(label) >= out.classes)
            throw validation_error(path + ": label " + std::to_string(label) +
                                   " outside the " + std::to_string(out.classes) +
                                   "-class range");
}

}  // namespace

LoadedFeatures load_image_features(const std::string& dir, const SplitManifest* split,
                                   std::optional<Section> section) {
    const auto base = std::filesystem::path(dir);
    const std::string sidecar_path = (base / "images.jsonl").string();
    Sidecar sidecar = read_sidecar(sidecar_path, "images");
    auto selected = select_lines(sidecar, sidecar_path, split, section);

    LoadedFeatures out;
    const auto height = sidecar.header.at("height").get<std::size_t>();
    const auto width = sidecar.header.at("width").get<std::size_t>();
    const std::size_t plane = height * width;
    out.batch.width = 3 * plane;
    out.batch.count = selected.size();
    out.batch.x.reserve(out.batch.count * out.batch.width);
    for (const SidecarLine* entry : selected) {
        const std::string file = entry->rec.at("file").get<std::string>();
        const std::string png_path = (base / file).string();
        RgbImage img = decode_png_rgb8(read_file(png_path), png_path);
        if (img.height != height || img.width != width)
            throw validation_error(png_path + ": image is " + std::to_string(img.height) + "x" +
                                   std::to_string(img.width) + ", sidecar promises " +
                                   std::to_string(height) + "x" + std::to_string(width));
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t i = 0; i < plane; ++i)
                out.batch.x.push_back(static_cast<double>(img.rgb[3 * i + p]) / 255.0);
        out.batch.labels.push_back(entry->label);
        out.ids.push_back(entry->id);
    }
    finish(out, sidecar, sidecar_path);
    return out;
}

LoadedFeatures load_text_features(const std::string& dir, const SplitManifest* split,
                                  std::optional<Section> section) {
    const auto base = std::filesystem::path(dir);
    const std::string sidecar_path = (base / "texts.jsonl").string();
    Sidecar sidecar = read_sidecar(sidecar_path, "texts");
    auto selected = select_lines(sidecar, sidecar_path, split, section);

    const auto separator = sidecar.header.at("separator").get<std::string>();
    const auto scale = sidecar.header.at("feature_scale").get<double>();

    // Pull each referenced file once and index its lines.
    std::map<std::string, std::vector<std::string>> file_lines;
    auto lines_of = [&](const std::string& file) -> const std::vector<std::string>& {
        auto it = file_lines.find(file);
        if (it == file_lines.end()) {
            std::vector<std::string> lines;
            std::istringstream in(read_file((base / file).string()));
            std::string line;
            while (std::getline(in, line)) lines.push_back(line);
            it = file_lines.emplace(file, std::move(lines)).first;
        }
        return it->second;
    };

    LoadedFeatures out;
    out.batch.count = selected.size();
    for (const SidecarLine* entry : selected) {
        const std::string file = entry->rec.at("file").get<std::string>();
        const auto line_no = entry->rec.at("line").get<std::size_t>();  // 1-based
        const auto& lines = lines_of(file);
        if (line_no == 0 || line_no > lines.size())
            throw validation_error(sidecar_path + ": instance '" + entry->id + "' points at " +
                                   file + " line " + std::to_string(line_no) + ", file has " +
                                   std::to_string(lines.size()) + " lines");
        std::vector<std::int64_t> tokens = parse_token_text(lines[line_no - 1], separator);
        if (out.batch.width == 0) out.batch.width = tokens.size();
        if (tokens.size() != out.batch.width)
            throw validation_error(sidecar_path + ": instance '" + entry->id + "' renders " +
                                   std::to_string(tokens.size()) + " tokens, expected " +
                                   std::to_string(out.batch.width) +
                                   "; cannot form a rectangular feature matrix");
        for (std::int64_t t : tokens) out.batch.x.push_back(static_cast<double>(t) * scale);
        out.batch.labels.push_back(entry->label);
        out.ids.push_back(entry->id);
    }
    finish(out, sidecar, sidecar_path);
    return out;
}

LoadedFeatures load_converted_features(const std::string& dir, const SplitManifest* split,
                                       std::optional<Section> section) {
    namespace fs = std::filesystem;
    if (fs::exists(fs::path(dir) / "images.jsonl")) return load_image_features(dir, split, section);
    if (fs::exists(fs::path(dir) / "texts.jsonl")) return load_text_features(dir, split, section);
    throw validation_error(dir + ": no images.jsonl or texts.jsonl found; not a converted "
                                 "artifact directory");
}

}  // namespace sigcast
