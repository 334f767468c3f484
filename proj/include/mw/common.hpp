// Shared diagnostics: parse/limit errors and validation reports.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mw {

// Raised when an input file (or inline text) cannot be parsed.
// line is 1-based; 0 means "no position".
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_ = 0;
};

// Raised when a resource guard (nmax, biclique limit, ...) is exceeded.
class LimitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Outcome of a validator: ok, or the first violated condition with a witness.
struct Report {
    bool ok = true;
    std::string detail;

    static Report pass() { return {}; }
    static Report fail(std::string d) { return {false, std::move(d)}; }
    explicit operator bool() const { return ok; }
    bool operator==(const Report&) const = default;
};

} // namespace mw
