#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace patqsym {

class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// A violated operation precondition: mismatched degree, out-of-range input,
// a profile that does not satisfy the operation's contract, and so on.
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& msg) : error(msg) {}
};

// A configured resource bound (enumeration cap, node budget) was exceeded.
class budget_error : public error {
public:
    explicit budget_error(const std::string& msg) : error(msg) {}
};

// Malformed textual input. line is 1-based, 0 when not tied to a line.
class parse_error : public error {
public:
    explicit parse_error(const std::string& msg, std::size_t line = 0)
        : error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace patqsym
