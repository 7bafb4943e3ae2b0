#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tanglecalc {

// Byte offsets into a parsed text, [start, end).
struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, SourceSpan span) : Error(what), span_(span) {}
    SourceSpan span() const { return span_; }

private:
    SourceSpan span_;
};

// Input is well-formed but violates an operation's precondition
// (open diagram where a closed one is needed, n < 2, missing orientation ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace tanglecalc
