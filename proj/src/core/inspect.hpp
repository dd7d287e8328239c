#pragma once

#include <string>

namespace sigcast {

// Human-readable dump of any artifact this toolchain writes: PNGs (with their
// sidecar record), text renderings, jsonl manifests, dataset stores, probe
// heads, and report files. Directories are summarized from the manifests they
// contain.
std::string inspect_path(const std::string& path);

}  // namespace sigcast
