#include "trippal/errors.hpp"

namespace trippal {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::InvalidTask: return "InvalidTask";
    case ErrorCode::UnknownPoi: return "UnknownPoi";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::TaskTooLarge: return "TaskTooLarge";
    case ErrorCode::ResourceExhausted: return "ResourceExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::ProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::ProviderParseError: return "ProviderParseError";
    case ErrorCode::IncompleteInfo: return "IncompleteInfo";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
}

ParseError::ParseError(const std::string &message, std::size_t line)
    : Error(ErrorCode::ParseError,
            line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {
}

ProviderParseError::ProviderParseError(const std::string &message, std::string raw_text)
    : Error(ErrorCode::ProviderParseError, message), raw_text_(std::move(raw_text)) {
}

} // namespace trippal
