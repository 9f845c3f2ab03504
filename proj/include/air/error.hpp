#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace air {

/// Domain error carrying a stable machine-readable code (e.g. "NonGenericZeta").
/// The CLI maps these to exit status 1 and an error document on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, std::string message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)), message_(std::move(message)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string code_;
    std::string message_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace air
