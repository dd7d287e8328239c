#pragma once

#include "core/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sigcast {

enum class Aggregator { mean, first, max_abs };
enum class OverflowStatus { fits, downsampled, rejected };

const char* aggregator_name(Aggregator a);
Aggregator aggregator_from_name(const std::string& name);
const char* overflow_status_name(OverflowStatus s);

struct TextOptions {
    double alpha = 1000.0;
    std::size_t max_len = 1024;
    Aggregator aggregator = Aggregator::mean;
    std::string separator = " ";
    bool integer_input = false;   // inputs are already integers, skip amplification
    bool force = false;           // downgrade a rejection to downsampling
    bool legacy_flatten = false;  // multi-channel comparison mode: row-major C*T flatten

    void validate() const;
};

std::string text_options_hash(const TextOptions& opt);

struct TokenText {
    std::string text;
    std::size_t token_count = 0;
    std::size_t window_size = 0;
    OverflowStatus status = OverflowStatus::fits;
    std::string instance_id;
    std::string config_hash;
};

// round_half_away_from_zero(v * alpha); alpha is ignored when integer_input.
std::vector<std::int64_t> amplify_and_round(const std::vector<double>& values, double alpha,
                                            bool integer_input = false);

// Window width used for a length-T sequence under budget L: ceil(T/L).
std::size_t window_width(std::size_t t_len, std::size_t max_len);

// Partition into consecutive windows of that width (final window may be
// shorter) and emit one value per window.
std::vector<std::int64_t> window_downsample(const std::vector<std::int64_t>& values,
                                            std::size_t max_len,
                                            Aggregator agg = Aggregator::mean);

OverflowStatus check_overflow(std::size_t t_len, std::size_t max_len);

TokenText convert_to_text(const SignalMatrix& m, const TextOptions& opt);

std::string render_tokens(const std::vector<std::int64_t>& values, const std::string& separator);
std::vector<std::int64_t> parse_token_text(const std::string& text, const std::string& separator);

}  // namespace sigcast
