#pragma once

#include <stdexcept>
#include <string>

namespace xcover {

/// Malformed instance text. Carries the 1-based line number of the offending record.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Input exceeds a configured solver cap (subset width, set count, pattern size).
class CapacityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A reduction was asked to run outside the regime where its correctness argument holds.
class PreconditionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Backtracking search ran out of node expansions.
class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace xcover
