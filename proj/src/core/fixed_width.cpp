#include "core/fixed_width.hpp"

#include <charconv>
#include <cmath>

#include "core/error.hpp"
#include "core/io_util.hpp"

namespace sigcast {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

} // namespace

NumericTable parse_fixed_width(std::string_view text, const std::string& source_name) {
    NumericTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::vector<double> row;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                     ? std::string_view::npos
                                                     : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        row.clear();
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && is_space(line[i])) ++i;
            if (i >= line.size()) break;
            std::size_t j = i;
            while (j < line.size() && !is_space(line[j])) ++j;
            const std::string_view tok = line.substr(i, j - i);
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || ptr != tok.data() + tok.size())
                throw validation_error(source_name + " row " + std::to_string(line_no) +
                                       ": malformed value '" + std::string(tok) + "'");
            if (!std::isfinite(v))
                throw numeric_error(source_name + " row " + std::to_string(line_no) +
                                    ": non-finite value '" + std::string(tok) + "'");
            row.push_back(v);
            i = j;
        }
        if (row.empty()) continue; // blank line

        if (table.cols == 0) {
            table.cols = row.size();
        } else if (row.size() != table.cols) {
            throw validation_error(source_name + " row " + std::to_string(line_no) +
                                   ": expected " + std::to_string(table.cols) +
                                   " values, got " + std::to_string(row.size()));
        }
        table.values.insert(table.values.end(), row.begin(), row.end());
        ++table.rows;
    }
    if (table.rows == 0)
        throw validation_error(source_name + ": no data rows");
    return table;
}

NumericTable parse_fixed_width_file(const std::string& path) {
    return parse_fixed_width(read_file(path), path);
}

} // namespace sigcast
