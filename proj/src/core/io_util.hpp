#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

#include "core/error.hpp"

namespace sigcast {

inline std::string read_file(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) throw io_error("cannot open: " + path);
    std::string out;
    char buf[1 << 16];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad) throw io_error("read failure: " + path);
    return out;
}

inline void write_file(const std::string& path, std::string_view data) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw io_error("cannot create: " + path);
    const std::size_t n = std::fwrite(data.data(), 1, data.size(), f);
    const bool bad = n != data.size() || std::fclose(f) != 0;
    if (bad) throw io_error("write failure: " + path);
}

inline void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw io_error("cannot create directory " + path + ": " + ec.message());
}

} // namespace sigcast
