#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trippal {

enum class ErrorCode {
    InvalidName,
    InvalidTask,
    UnknownPoi,
    OracleTooLarge,
    TaskTooLarge,
    ResourceExhausted,
    ParseError,
    UnknownFixture,
    ProviderUnavailable,
    ProviderParseError,
    IncompleteInfo,
    IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message);

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// Line is 1-based; 0 when the failure is not tied to a line.
class ParseError : public Error {
public:
    explicit ParseError(const std::string &message, std::size_t line = 0);

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Keeps the reply that could not be parsed so callers can log or record it.
class ProviderParseError : public Error {
public:
    ProviderParseError(const std::string &message, std::string raw_text);

    const std::string &raw_text() const { return raw_text_; }

private:
    std::string raw_text_;
};

} // namespace trippal
