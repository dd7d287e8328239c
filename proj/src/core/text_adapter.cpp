#include "core/text_adapter.hpp"

#include "core/error.hpp"
#include "core/hash.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace sigcast {

const char* aggregator_name(Aggregator a) {
    switch (a) {
        case Aggregator::mean: return "mean";
        case Aggregator::first: return "first";
        case Aggregator::max_abs: return "max_abs";
    }
    throw validation_error("unknown aggregator value");
}

Aggregator aggregator_from_name(const std::string& name) {
    if (name == "mean") return Aggregator::mean;
    if (name == "first") return Aggregator::first;
    if (name == "max_abs" || name == "max-abs") return Aggregator::max_abs;
    throw validation_error("unknown aggregator '" + name +
                           "' (expected mean, first, or max_abs)");
}

const char* overflow_status_name(OverflowStatus s) {
    switch (s) {
        case OverflowStatus::fits: return "fits";
        case OverflowStatus::downsampled: return "downsampled";
        case OverflowStatus::rejected: return "rejected";
    }
    throw validation_error("unknown overflow status value");
}

void TextOptions::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw validation_error("alpha must be a positive finite value");
    if (max_len < 1) throw validation_error("max_len must be at least 1");
    if (separator.empty()) throw validation_error("separator must not be empty");
    if (separator.find_first_of("0123456789+-") != std::string::npos)
        throw validation_error("separator must not contain digits or signs");
    aggregator_name(aggregator);
}

std::string text_options_hash(const TextOptions& opt) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "text|alpha=%.17g|L=%zu|agg=%s|sep=%s|int=%d|flat=%d",
                  opt.alpha, opt.max_len, aggregator_name(opt.aggregator), opt.separator.c_str(),
                  opt.integer_input ? 1 : 0, opt.legacy_flatten ? 1 : 0);
    return sha256_hex(buf).substr(0, 16);
}

std::vector<std::int64_t> amplify_and_round(const std::vector<double>& values, double alpha,
                                            bool integer_input) {
    constexpr double kInt64Edge = 9223372036854775808.0;  // 2^63, exactly representable
    std::vector<std::int64_t> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!std::isfinite(v))
            throw numeric_error("non-finite sample at index " + std::to_string(i));
        const double scaled = integer_input ? v : v * alpha;
        if (!std::isfinite(scaled) || scaled >= kInt64Edge || scaled <= -kInt64Edge)
            throw numeric_error("amplified sample at index " + std::to_string(i) + " (" +
                                std::to_string(scaled) + ") overflows 64-bit integers");
        out.push_back(std::llround(scaled));
    }
    return out;
}

std::size_t window_width(std::size_t t_len, std::size_t max_len) {
    if (t_len == 0 || max_len == 0)
        throw validation_error("window width needs positive sequence length and budget");
    return (t_len + max_len - 1) / max_len;
}

namespace {

std::int64_t window_mean(const std::int64_t* v, std::size_t n) {
    __int128 sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += v[i];
    __int128 q = sum / static_cast<__int128>(n);
    __int128 r = sum % static_cast<__int128>(n);
    if (r < 0) r = -r;
    // exact half-away-from-zero on the rational sum/n
    if (2 * r >= static_cast<__int128>(n)) q += sum < 0 ? -1 : 1;
    return static_cast<std::int64_t>(q);
}

std::int64_t window_max_abs(const std::int64_t* v, std::size_t n) {
    std::size_t best = 0;
    unsigned long long best_mag = v[0] < 0 ? 0ull - static_cast<unsigned long long>(v[0])
                                           : static_cast<unsigned long long>(v[0]);
    for (std::size_t i = 1; i < n; ++i) {
        unsigned long long mag = v[i] < 0 ? 0ull - static_cast<unsigned long long>(v[i])
                                          : static_cast<unsigned long long>(v[i]);
        if (mag > best_mag) {
            best = i;
            best_mag = mag;
        }
    }
    return v[best];
}

}  // namespace

std::vector<std::int64_t> window_downsample(const std::vector<std::int64_t>& values,
                                            std::size_t max_len, Aggregator agg) {
    const std::size_t t_len = values.size();
    if (t_len <= max_len) return values;
    const std::size_t w = window_width(t_len, max_len);
    std::vector<std::int64_t> out;
    out.reserve((t_len + w - 1) / w);
    for (std::size_t start = 0; start < t_len; start += w) {
        const std::size_t n = std::min(w, t_len - start);
        const std::int64_t* v = values.data() + start;
        switch (agg) {
            case Aggregator::mean: out.push_back(window_mean(v, n)); break;
            case Aggregator::first: out.push_back(v[0]); break;
            case Aggregator::max_abs: out.push_back(window_max_abs(v, n)); break;
        }
    }
    return out;
}

OverflowStatus check_overflow(std::size_t t_len, std::size_t max_len) {
    if (t_len == 0 || max_len == 0)
        throw validation_error("overflow check needs positive sequence length and budget");
    if (t_len <= max_len) return OverflowStatus::fits;
    if (t_len <= 3 * max_len) return OverflowStatus::downsampled;  // 3L boundary inclusive
    return OverflowStatus::rejected;
}

TokenText convert_to_text(const SignalMatrix& m, const TextOptions& opt) {
    opt.validate();
    require_valid(m);
    if (m.channels != 1 && !opt.legacy_flatten)
        throw validation_error(
            "instance '" + m.id + "' has " + std::to_string(m.channels) +
            " channels; the text adapter takes single-channel data. Use the image adapter "
            "for multi-channel instances, or enable legacy_flatten to concatenate rows");

    const std::size_t t_len = m.samples.size();  // C*T under legacy_flatten, else T
    OverflowStatus status = check_overflow(t_len, opt.max_len);
    if (status == OverflowStatus::rejected) {
        if (opt.force) {
            status = OverflowStatus::downsampled;
        } else {
            throw validation_error(
                "instance '" + m.id + "' has " + std::to_string(t_len) +
                " samples, more than three times the budget of " + std::to_string(opt.max_len) +
                "; downsampling that far loses most of the signal. Use the image adapter "
                "for this data, or force the conversion");
        }
    }

    std::vector<std::int64_t> ints = amplify_and_round(m.samples, opt.alpha, opt.integer_input);
    const std::size_t w = window_width(t_len, opt.max_len);
    if (w > 1) ints = window_downsample(ints, opt.max_len, opt.aggregator);

    TokenText out;
    out.text = render_tokens(ints, opt.separator);
    out.token_count = ints.size();
    out.window_size = w;
    out.status = status;
    out.instance_id = m.id;
    out.config_hash = text_options_hash(opt);
    return out;
}

std::string render_tokens(const std::vector<std::int64_t>& values, const std::string& separator) {
    std::string out;
    char buf[24];
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += separator;
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, values[i]);
        out.append(buf, end);
    }
    return out;
}

std::vector<std::int64_t> parse_token_text(const std::string& text, const std::string& separator) {
    if (separator.empty()) throw validation_error("separator must not be empty");
    if (text.empty()) throw validation_error("token text is empty");
    std::vector<std::int64_t> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = text.find(separator, pos);
        const std::string_view token(text.data() + pos,
                                     (next == std::string::npos ? text.size() : next) - pos);
        std::int64_t value = 0;
        auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || end != token.data() + token.size())
            throw validation_error("token " + std::to_string(out.size() + 1) + " ('" +
                                   std::string(token) + "') is not a signed integer");
        out.push_back(value);
        if (next == std::string::npos) break;
        pos = next + separator.size();
    }
    return out;
}

}  // namespace sigcast
