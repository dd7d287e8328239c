#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace sigcast {

// Streaming SHA-256 with hex output. Used for source checksums, config
// hashes, and output-tree comparison.
class Sha256 {
public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const void* data, std::size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    // Finalizes; the object must not be updated afterwards.
    std::string hex();

private:
    void* ctx_;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::string& path);

} // namespace sigcast
