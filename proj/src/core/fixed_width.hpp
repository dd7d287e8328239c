#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sigcast {

struct NumericTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major
};

// Whitespace-separated floating-point table, one instance row per line.
// Every row must carry the same number of fields as the first; blank lines
// are skipped but keep their place in the reported row numbers (1-based).
NumericTable parse_fixed_width(std::string_view text, const std::string& source_name);

NumericTable parse_fixed_width_file(const std::string& path);

} // namespace sigcast
