#pragma once

#include "json.hpp"

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace sigcast {

// One structured event per stderr line; stdout stays free for data.
inline void log_event(const std::string& event,
                      const std::vector<std::pair<std::string, nlohmann::json>>& fields = {}) {
    nlohmann::json rec;
    rec["event"] = event;
    for (const auto& [key, value] : fields) rec[key] = value;
    std::fputs((rec.dump() + "\n").c_str(), stderr);
}

}  // namespace sigcast
