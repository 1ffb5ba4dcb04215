#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace toric {

// Error codes are stable strings ("ZeroVector", "NotStrictlyConvex", ...);
// the CLI maps them to exit status 1 diagnostics.
class Error : public std::runtime_error {
public:
    explicit Error(std::string code)
        : std::runtime_error(code), code_(std::move(code)) {}
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code) { throw Error(std::move(code)); }
[[noreturn]] inline void fail(std::string code, const std::string& detail) {
    throw Error(std::move(code), detail);
}

} // namespace toric
