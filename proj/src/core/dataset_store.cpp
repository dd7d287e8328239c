#include "core/dataset_store.hpp"

#include "core/bytes.hpp"
#include "core/error.hpp"
#include "core/io_util.hpp"

#include "json.hpp"

#include <filesystem>
#include <sstream>

namespace sigcast {

using nlohmann::json;

namespace {

constexpr char kMagic[4] = {'S', 'G', 'C', 'D'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 32;

}  // namespace

void save_dataset(const Dataset& ds, const std::string& dir) {
    if (ds.instances.empty()) throw validation_error("refusing to save an empty dataset");
    const std::size_t channels = ds.instances.front().channels;
    const std::size_t length = ds.instances.front().length;
    for (const auto& m : ds.instances) {
        require_valid(m);
        if (m.channels != channels || m.length != length)
            throw validation_error("dataset instances must share one shape; '" + m.id +
                                   "' is " + std::to_string(m.channels) + "x" +
                                   std::to_string(m.length) + ", expected " +
                                   std::to_string(channels) + "x" + std::to_string(length));
    }

    ensure_dir(dir);
    std::string bin;
    bin.reserve(kHeaderBytes + ds.instances.size() * channels * length * 8);
    bin.append(kMagic, 4);
    put_u32_le(bin, kVersion);
    put_u64_le(bin, ds.instances.size());
    put_u64_le(bin, channels);
    put_u64_le(bin, length);

    std::string manifest;
    {
        json header;
        header["kind"] = "dataset";
        header["name"] = ds.name;
        header["class_names"] = ds.class_names;
        header["channels"] = channels;
        header["length"] = length;
        header["count"] = ds.instances.size();
        header["checksum"] = ds.checksum;
        manifest += header.dump();
        manifest += '\n';
    }
    for (const auto& m : ds.instances) {
        json line;
        line["id"] = m.id;
        line["source"] = "data.bin";
        line["offset"] = bin.size();
        line["label"] = m.label;
        if (!m.group.empty()) line["group"] = m.group;
        manifest += line.dump();
        manifest += '\n';
        for (double v : m.samples) put_f64_le(bin, v);
    }

    const auto base = std::filesystem::path(dir);
    write_file((base / "data.bin").string(), bin);
    write_file((base / "manifest.jsonl").string(), manifest);
}

Dataset load_dataset(const std::string& dir) {
    const auto base = std::filesystem::path(dir);
    const std::string manifest_path = (base / "manifest.jsonl").string();
    const std::string bin = read_file((base / "data.bin").string());

    if (bin.size() < kHeaderBytes || std::memcmp(bin.data(), kMagic, 4) != 0)
        throw io_error(dir + "/data.bin: missing dataset magic");
    const auto* p = reinterpret_cast<const unsigned char*>(bin.data());
    if (get_u32_le(p + 4) != kVersion)
        throw io_error(dir + "/data.bin: unsupported version " + std::to_string(get_u32_le(p + 4)));
    const std::uint64_t count = get_u64_le(p + 8);
    const std::uint64_t channels = get_u64_le(p + 16);
    const std::uint64_t length = get_u64_le(p + 24);
    const std::size_t instance_bytes = channels * length * 8;
    const std::size_t expected = kHeaderBytes + count * instance_bytes;
    if (bin.size() != expected)
        throw io_error(dir + "/data.bin: expected " + std::to_string(expected) + " bytes, got " +
                       std::to_string(bin.size()));

    Dataset ds;
    std::istringstream in(read_file(manifest_path));
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
            throw validation_error(manifest_path + " line " + std::to_string(lineno) +
                                   ": malformed record: " + e.what());
        }
        try {
            if (!saw_header) {
                if (rec.value("kind", "") != "dataset")
                    throw validation_error(manifest_path + ": first line is not a dataset header");
                ds.name = rec.at("name").get<std::string>();
                ds.class_names = rec.at("class_names").get<std::vector<std::string>>();
                ds.checksum = rec.at("checksum").get<std::string>();
                if (rec.at("channels").get<std::uint64_t>() != channels ||
                    rec.at("length").get<std::uint64_t>() != length ||
                    rec.at("count").get<std::uint64_t>() != count)
                    throw validation_error(manifest_path +
                                           ": header shape disagrees with data.bin");
                saw_header = true;
                continue;
            }
            SignalMatrix m;
            m.id = rec.at("id").get<std::string>();
            if (rec.at("source").get<std::string>() != "data.bin")
                throw validation_error(manifest_path + " line " + std::to_string(lineno) +
                                       ": unknown source file");
            const std::uint64_t offset = rec.at("offset").get<std::uint64_t>();
            if (offset + instance_bytes > bin.size() ||
                (offset - kHeaderBytes) % instance_bytes != 0)
                throw validation_error(manifest_path + " line " + std::to_string(lineno) +
                                       ": offset " + std::to_string(offset) +
                                       " is out of range for data.bin");
            m.label = rec.at("label").get<int>();
            m.group = rec.value("group", "");
            m.channels = channels;
            m.length = length;
            m.samples.resize(channels * length);
            const auto* q = reinterpret_cast<const unsigned char*>(bin.data()) + offset;
            for (std::size_t i = 0; i < m.samples.size(); ++i) m.samples[i] = get_f64_le(q + i * 8);
            if (m.label < 0 || static_cast<std::size_t>(m.label) >= ds.class_names.size())
                throw validation_error(manifest_path + " line " + std::to_string(lineno) +
                                       ": label " + std::to_string(m.label) +
                                       " outside class range");
            ds.instances.push_back(std::move(m));
        } catch (const json::exception& e) {
            throw validation_error(manifest_path + " line " + std::to_string(lineno) +
                                   ": missing or mistyped field: " + e.what());
        }
    }
    if (!saw_header) throw validation_error(manifest_path + ": empty dataset manifest");
    if (ds.instances.size() != count)
        throw validation_error(manifest_path + ": header count " + std::to_string(count) +
                               " disagrees with " + std::to_string(ds.instances.size()) +
                               " instance records");
    return ds;
}

}  // namespace sigcast
