#include "core/split.hpp"

#include "core/error.hpp"
#include "core/io_util.hpp"
#include "core/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace sigcast {

using nlohmann::json;

const char* section_name(Section s) {
    switch (s) {
        case Section::train: return "train";
        case Section::valid: return "valid";
        case Section::test: return "test";
    }
    throw validation_error("unknown section value");
}

Section section_from_name(const std::string& name) {
    if (name == "train") return Section::train;
    if (name == "valid") return Section::valid;
    if (name == "test") return Section::test;
    throw validation_error("unknown section name '" + name + "'");
}

std::array<std::size_t, 3> SplitManifest::counts() const {
    std::array<std::size_t, 3> c{0, 0, 0};
    for (Section s : assignment) c[static_cast<std::size_t>(s)]++;
    return c;
}

std::vector<std::size_t> SplitManifest::section_indices(Section s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == s) out.push_back(i);
    return out;
}

Section SplitManifest::section_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return assignment[i];
    throw validation_error("split manifest has no entry for id '" + id + "'");
}

namespace {

void check_ratios(const std::array<double, 3>& r) {
    double sum = 0.0;
    for (double v : r) {
        if (!(v > 0.0)) throw validation_error("split ratios must all be positive");
        sum += v;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw validation_error("split ratios must sum to 1 (got " + std::to_string(sum) + ")");
}

// Largest-remainder apportionment with a running carry so that totals across
// repeated calls stay within one instance of n_total * ratio per section.
std::array<std::size_t, 3> apportion_with_carry(std::size_t n, const std::array<double, 3>& ratios,
                                                std::array<double, 3>& carry) {
    std::array<double, 3> quota;
    std::array<std::size_t, 3> base;
    std::size_t assigned = 0;
    for (int i = 0; i < 3; ++i) {
        quota[i] = static_cast<double>(n) * ratios[i] + carry[i];
        double fl = std::floor(quota[i]);
        base[i] = fl > 0.0 ? static_cast<std::size_t>(fl) : 0;
        assigned += base[i];
    }
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        double fa = quota[a] - static_cast<double>(base[a]);
        double fb = quota[b] - static_cast<double>(base[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });
    for (int k = 0; assigned < n; ++k) {
        base[order[static_cast<std::size_t>(k) % 3]]++;
        assigned++;
    }
    for (int i = 0; i < 3; ++i) carry[i] = quota[i] - static_cast<double>(base[i]);
    return base;
}

}  // namespace

std::array<std::size_t, 3> apportion_counts(std::size_t n, const std::array<double, 3>& ratios) {
    check_ratios(ratios);
    std::array<double, 3> carry{0.0, 0.0, 0.0};
    return apportion_with_carry(n, ratios, carry);
}

SplitManifest split_dataset(const Dataset& ds, const SplitOptions& opt) {
    check_ratios(opt.ratios);
    const std::size_t n = ds.instances.size();
    if (n < 3)
        throw validation_error("split requires at least 3 instances, dataset has " +
                               std::to_string(n));
    if (opt.stratified && opt.by_group)
        throw validation_error("stratified and by_group splits cannot be combined");

    SplitManifest out;
    out.seed = opt.seed;
    out.ratios = opt.ratios;
    out.ids.reserve(n);
    for (const auto& m : ds.instances) out.ids.push_back(m.id);
    out.assignment.assign(n, Section::train);

    DetRng rng(opt.seed);
    auto fill_contiguous = [&](const std::vector<std::size_t>& shuffled,
                               const std::array<std::size_t, 3>& counts) {
        std::size_t pos = 0;
        for (int s = 0; s < 3; ++s)
            for (std::size_t k = 0; k < counts[static_cast<std::size_t>(s)]; ++k)
                out.assignment[shuffled[pos++]] = static_cast<Section>(s);
    };

    if (opt.by_group) {
        // First-appearance order of groups, then a seeded shuffle; group-less
        // instances act as singleton groups keyed by their own id.
        std::vector<std::string> group_order;
        std::map<std::string, std::vector<std::size_t>> members;
        for (std::size_t i = 0; i < n; ++i) {
            std::string key = ds.instances[i].group.empty() ? "id:" + ds.instances[i].id
                                                            : "g:" + ds.instances[i].group;
            auto [it, inserted] = members.try_emplace(key);
            if (inserted) group_order.push_back(key);
            it->second.push_back(i);
        }
        rng.shuffle(group_order);
        auto target = apportion_counts(n, opt.ratios);
        std::array<double, 3> deficit;
        for (int s = 0; s < 3; ++s) deficit[s] = static_cast<double>(target[s]);
        for (const auto& key : group_order) {
            int best = 0;
            for (int s = 1; s < 3; ++s)
                if (deficit[s] > deficit[best]) best = s;
            for (std::size_t i : members[key]) out.assignment[i] = static_cast<Section>(best);
            deficit[best] -= static_cast<double>(members[key].size());
        }
        return out;
    }

    if (opt.stratified) {
        std::map<int, std::vector<std::size_t>> by_class;
        for (std::size_t i = 0; i < n; ++i) by_class[ds.instances[i].label].push_back(i);
        std::array<double, 3> carry{0.0, 0.0, 0.0};
        for (auto& [label, idx] : by_class) {
            rng.shuffle(idx);
            fill_contiguous(idx, apportion_with_carry(idx.size(), opt.ratios, carry));
        }
        return out;
    }

    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    rng.shuffle(idx);
    fill_contiguous(idx, apportion_counts(n, opt.ratios));
    return out;
}

void save_split(const SplitManifest& split, const std::string& path) {
    std::string text;
    {
        json header;
        header["kind"] = "split";
        header["seed"] = split.seed;
        header["ratios"] = split.ratios;
        auto c = split.counts();
        header["counts"] = {c[0], c[1], c[2]};
        text += header.dump();
        text += '\n';
    }
    for (std::size_t i = 0; i < split.ids.size(); ++i) {
        json line;
        line["id"] = split.ids[i];
        line["section"] = section_name(split.assignment[i]);
        text += line.dump();
        text += '\n';
    }
    write_file(path, text);
}

SplitManifest load_split(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t lineno = 0;
    SplitManifest out;
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
                if (rec.value("kind", "") != "split")
                    throw validation_error("first line is not a split header");
                out.seed = rec.at("seed").get<std::uint64_t>();
                auto r = rec.at("ratios").get<std::vector<double>>();
                if (r.size() != 3)
                    throw validation_error("header must carry 3 ratios");
                std::copy(r.begin(), r.end(), out.ratios.begin());
                saw_header = true;
                continue;
            }
            out.ids.push_back(rec.at("id").get<std::string>());
            out.assignment.push_back(section_from_name(rec.at("section").get<std::string>()));
        } catch (const json::exception& e) {
            throw validation_error(path + " line " + std::to_string(lineno) +
                                   ": missing or mistyped field: " + e.what());
        } catch (const validation_error& e) {
            throw validation_error(path + " line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!saw_header) throw validation_error(path + ": empty split manifest");
    return out;
}

}  // namespace sigcast
