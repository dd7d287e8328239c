#pragma once

#include <stdexcept>
#include <string>

namespace sigcast {

// Error categories. The numeric values double as CLI exit codes and as the
// status codes of the C API, so they must stay stable.
enum class errc { validation = 1, io = 2, numeric = 3 };

class error : public std::runtime_error {
public:
    error(errc kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

// Inputs that violate a contract: bad shapes, bad flags, malformed records.
class validation_error : public error {
public:
    explicit validation_error(std::string message)
        : error(errc::validation, std::move(message)) {}
};

// Filesystem and format-level failures: unreadable files, truncated payloads.
class io_error : public error {
public:
    explicit io_error(std::string message)
        : error(errc::io, std::move(message)) {}
};

// Arithmetic failures: non-finite values, overflow, degenerate calibrations.
class numeric_error : public error {
public:
    explicit numeric_error(std::string message)
        : error(errc::numeric, std::move(message)) {}
};

} // namespace sigcast
