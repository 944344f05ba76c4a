#pragma once

#include <stdexcept>
#include <string>

namespace fgsense {

// Input file is syntactically malformed. `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Operation would exceed a hard resource guard (matrix bits, subset counts, ...).
class TooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fgsense
