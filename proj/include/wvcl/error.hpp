#pragma once

#include <stdexcept>
#include <string>

namespace wvcl {

// Every failure surfaced by the library carries a machine-parseable category.
// The CLI prints "error: <category>: <message>" and exits nonzero.
enum class ErrorCategory {
    InvalidInput,
    DegenerateInput,
    Io,
    Format,
    Incompatible,
    Config,
};

const char* category_name(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

struct InvalidInput : Error {
    explicit InvalidInput(const std::string& w) : Error(ErrorCategory::InvalidInput, w) {}
};
struct DegenerateInput : Error {
    explicit DegenerateInput(const std::string& w) : Error(ErrorCategory::DegenerateInput, w) {}
};
struct IoError : Error {
    explicit IoError(const std::string& w) : Error(ErrorCategory::Io, w) {}
};
struct FormatError : Error {
    explicit FormatError(const std::string& w) : Error(ErrorCategory::Format, w) {}
};
struct IncompatibleError : Error {
    explicit IncompatibleError(const std::string& w) : Error(ErrorCategory::Incompatible, w) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorCategory::Config, w) {}
};

}  // namespace wvcl
