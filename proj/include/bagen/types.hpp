#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bagen {

using NodeId    = std::uint64_t;
using EdgeIndex = std::uint64_t;
// Index into the conceptual edge array E[0..2m-1]; edge i owns 2i and 2i+1.
using HalfPos = std::uint64_t;

struct Edge {
    NodeId source = 0;
    NodeId target = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Inconsistent or out-of-range generator parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rejection sampling could not find enough distinct targets.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries the line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace bagen
