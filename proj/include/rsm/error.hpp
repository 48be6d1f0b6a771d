#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rsm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad CSV rows, unknown config keys, dangling references.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Inputs that parse but violate a model invariant. Carries every failure
/// found, so callers can report them all at once.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : Error(join(problems)), problems_(std::move(problems)) {}

    explicit ValidationError(const std::string& problem)
        : ValidationError(std::vector<std::string>{problem}) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& s : items) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace rsm
