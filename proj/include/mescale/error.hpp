#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mescale {

/// Input that violates a documented contract (bad ranges, unknown names,
/// inconsistent designs). Maps to CLI exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed file content. Carries the 1-based line where parsing failed
/// when it is known (0 otherwise).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Numerical failure inside a solver (non-convergence, infeasible operating
/// point, unstable sub-step).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mescale
