#pragma once

#include <stdexcept>
#include <string>

namespace tropkit {

enum class ErrorCode {
    invalid_input,   // malformed data, dangling names, disconnected graphs
    precondition,    // well-formed data outside an operation's domain
    capacity,        // search-size caps for exhaustive procedures
    certificate,     // a computed result failed its own verification
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string location = {})
        : std::runtime_error(message), code_(code), location_(std::move(location)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    ErrorCode code_;
    std::string location_;
};

inline const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::certificate: return "certificate_failure";
    }
    return "unknown";
}

} // namespace tropkit
